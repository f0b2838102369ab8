#include "rwnet/graph_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace rwnet {

LoadedGraph read_edge_list(std::istream& in, GraphMode mode) {
  std::unordered_map<std::string, int> id_of;
  std::vector<std::string> labels;
  std::vector<std::pair<int, int>> edges;
  std::string line;
  int lineno = 0;
  auto intern = [&](const std::string& s) {
    auto it = id_of.find(s);
    if (it != id_of.end()) return it->second;
    const int id = static_cast<int>(labels.size());
    id_of.emplace(s, id);
    labels.push_back(s);
    return id;
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::string body = line;
    const auto hash = body.find('#');
    if (hash != std::string::npos) body.erase(hash);
    for (char& c : body) {
      if (c == ',') c = ' ';
    }
    std::istringstream ls(body);
    std::string a, b, extra;
    if (!(ls >> a)) continue;  // blank or comment-only line
    if (!(ls >> b) || (ls >> extra))
      throw std::runtime_error("edge list line " + std::to_string(lineno) + ": expected exactly two endpoints");
    const int u = intern(a);
    const int v = intern(b);
    edges.emplace_back(u, v);
  }
  LoadedGraph out;
  out.labels = std::move(labels);
  out.graph = build_graph(edges, mode, static_cast<int>(out.labels.size()));
  return out;
}

LoadedGraph read_edge_list_file(const std::string& path, GraphMode mode) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open edge list: " + path);
  return read_edge_list(in, mode);
}

void write_edge_list(std::ostream& out, const Graph& g, const std::vector<std::string>& header_lines) {
  for (const auto& h : header_lines) out << "# " << h << "\n";
  for (const auto& [u, v] : g.edges()) out << u << " " << v << "\n";
}

void write_edge_list_file(const std::string& path, const Graph& g, const std::vector<std::string>& header_lines) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  write_edge_list(out, g, header_lines);
}

}  // namespace rwnet
