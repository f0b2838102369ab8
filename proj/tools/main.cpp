#include "rwnet/cli.hpp"

int main(int argc, char** argv) { return rwnet::dispatch(argc, argv); }
