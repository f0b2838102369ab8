#pragma once

#include <string>
#include <vector>

namespace rwnet {

inline constexpr const char* kVersion = "0.1.0";

/// Entry point shared by the installed binary and the test suite. `args`
/// excludes the program name. Returns a process exit code.
int dispatch(const std::vector<std::string>& args);

int dispatch(int argc, char** argv);

}  // namespace rwnet
