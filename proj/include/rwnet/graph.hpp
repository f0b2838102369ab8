#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace rwnet {

enum class GraphMode { Multigraph, Simple };
enum class Selection { Uniform, SizeBiased };

/// Undirected graph with an insertion-ordered edge list. Multigraph mode
/// admits parallel edges and self loops; Simple mode rejects both. The edge
/// order is part of the identity (it doubles as a growth history); use
/// same_edge_multiset for order-insensitive comparison.
class Graph {
 public:
  explicit Graph(GraphMode mode = GraphMode::Multigraph) : mode_(mode) {}

  static Graph single_edge(GraphMode mode = GraphMode::Multigraph);

  GraphMode mode() const { return mode_; }
  int vertex_count() const { return static_cast<int>(adj_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  /// Sum of degrees; each edge contributes 2 (self loops included).
  std::int64_t volume() const { return 2 * static_cast<std::int64_t>(edges_.size()); }

  int add_vertex();
  void add_edge(int u, int v);

  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  /// Half-edge targets; a self loop at v lists v twice.
  const std::vector<int>& neighbors(int v) const { return adj_[v]; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::pair<int, int>& edge(int i) const { return edges_[i]; }

  bool is_adjacent(int u, int v) const;
  int multiplicity(int u, int v) const;

  /// True when every vertex lies in one component (an isolated vertex makes
  /// a graph with n > 1 disconnected).
  bool is_connected() const;

  /// Order-insensitive hash of the edge multiset (plus vertex count); used to
  /// share spectral work between states that coincide as graphs.
  std::uint64_t structural_hash() const { return hash_ ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(adj_.size())); }

  /// Simple graph on the same vertex set: parallel edges collapsed, self
  /// loops dropped. Edge order follows first appearance.
  Graph simple_skeleton() const;

 private:
  GraphMode mode_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> adj_;
  std::uint64_t hash_ = 0;
};

bool same_edge_multiset(const Graph& a, const Graph& b);

/// Builds a graph from an explicit edge list. Vertex ids must be dense from 0
/// once all edges are read; n_hint adds trailing isolated vertices.
Graph build_graph(const std::vector<std::pair<int, int>>& edges, GraphMode mode, int n_hint = 0);

/// Edge-insertion record of a growth run. Vectors align with the edge list of
/// the generated graph: entry 0 covers the seed edge. b_flags[t] = 1 when step
/// t introduced its vertex through the new-vertex branch (the seed counts as
/// 1); walk_lengths[t] >= 1 records the walk length of a walk step and is -1
/// when the step drew no walk.
struct History {
  std::vector<int> b_flags;
  std::vector<int> walk_lengths;
};

/// Prefix of a graph under a partial insertion order, with isolated vertices
/// removed. vertex_of[i] is the original id of compact vertex i; compact_of
/// maps original ids to compact ids (-1 when absent).
struct PrefixGraph {
  Graph graph;
  std::vector<int> vertex_of;
  std::vector<int> compact_of;
};

PrefixGraph subgraph_prefix(const Graph& g, const std::vector<int>& order, int t);

/// Edge indices of g that are not in the prefix but touch a prefix vertex.
/// `inserted` marks edges already placed; at least one edge must be placed.
std::vector<int> feasible_edges(const Graph& g, const std::vector<char>& inserted);

/// Distances from src by breadth-first search on the simple skeleton
/// structure; unreachable vertices get -1.
std::vector<int> bfs_distances(const Graph& g, int src);

struct GraphMetrics {
  int vertices = 0;
  int edges = 0;
  bool connected = false;
  /// Distance statistics cover the largest component when disconnected.
  int diameter = 0;
  double mean_shortest_path = 0.0;
  double clustering_global = 0.0;
  double clustering_mean_local = 0.0;
  int largest_component = 0;
};

/// Structural summary; computed on the simple skeleton.
GraphMetrics graph_metrics(const Graph& g);

}  // namespace rwnet
