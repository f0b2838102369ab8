#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rwnet/graph.hpp"

namespace rwnet {

/// Result of reading an edge list: the graph plus the original vertex labels
/// in id order (labels[i] names vertex i).
struct LoadedGraph {
  Graph graph;
  std::vector<std::string> labels;
};

/// Parses one edge per line, endpoints separated by whitespace or a comma.
/// Lines starting with '#' and blank lines are skipped. Labels may be
/// arbitrary strings; they are densely numbered in order of first appearance.
/// Malformed lines raise with the 1-based line number.
LoadedGraph read_edge_list(std::istream& in, GraphMode mode);
LoadedGraph read_edge_list_file(const std::string& path, GraphMode mode);

/// Writes "u v" per line, 0-based ids, LF terminated, edges in order.
/// `header_lines` are emitted first, each prefixed with "# ".
void write_edge_list(std::ostream& out, const Graph& g, const std::vector<std::string>& header_lines = {});
void write_edge_list_file(const std::string& path, const Graph& g, const std::vector<std::string>& header_lines = {});

}  // namespace rwnet
