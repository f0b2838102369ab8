#include "rwnet/graph.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "rwnet/rng.hpp"

namespace rwnet {

namespace {

inline std::uint64_t edge_key(int u, int v) {
  const std::uint64_t a = static_cast<std::uint64_t>(std::min(u, v));
  const std::uint64_t b = static_cast<std::uint64_t>(std::max(u, v));
  return (a << 32) | b;
}

}  // namespace

Graph Graph::single_edge(GraphMode mode) {
  Graph g(mode);
  g.add_vertex();
  g.add_vertex();
  g.add_edge(0, 1);
  return g;
}

int Graph::add_vertex() {
  adj_.emplace_back();
  return static_cast<int>(adj_.size()) - 1;
}

void Graph::add_edge(int u, int v) {
  const int n = vertex_count();
  if (u < 0 || v < 0 || u >= n || v >= n) throw std::invalid_argument("add_edge: endpoint out of range");
  if (mode_ == GraphMode::Simple) {
    if (u == v) throw std::invalid_argument("add_edge: self loop rejected in simple mode");
    if (is_adjacent(u, v)) throw std::invalid_argument("add_edge: parallel edge rejected in simple mode");
  }
  edges_.emplace_back(u, v);
  adj_[u].push_back(v);
  adj_[v].push_back(u);
  hash_ += splitmix64(edge_key(u, v));
}

bool Graph::is_adjacent(int u, int v) const {
  const auto& a = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
  const int target = adj_[u].size() <= adj_[v].size() ? v : u;
  return std::find(a.begin(), a.end(), target) != a.end();
}

int Graph::multiplicity(int u, int v) const {
  if (u == v) {
    int c = 0;
    for (int w : adj_[u]) c += (w == u);
    return c / 2;
  }
  int c = 0;
  for (int w : adj_[u]) c += (w == v);
  return c;
}

bool Graph::is_connected() const {
  const int n = vertex_count();
  if (n <= 1) return true;
  std::vector<char> seen(n, 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int count = 1;
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (int v : adj_[u]) {
      if (!seen[v]) {
        seen[v] = 1;
        ++count;
        q.push(v);
      }
    }
  }
  return count == n;
}

Graph Graph::simple_skeleton() const {
  Graph s(GraphMode::Simple);
  for (int i = 0; i < vertex_count(); ++i) s.add_vertex();
  std::unordered_set<std::uint64_t> seen;
  for (const auto& [u, v] : edges_) {
    if (u == v) continue;
    if (seen.insert(edge_key(u, v)).second) s.add_edge(u, v);
  }
  return s;
}

bool same_edge_multiset(const Graph& a, const Graph& b) {
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
  std::unordered_map<std::uint64_t, int> counts;
  for (const auto& [u, v] : a.edges()) ++counts[edge_key(u, v)];
  for (const auto& [u, v] : b.edges()) {
    auto it = counts.find(edge_key(u, v));
    if (it == counts.end() || it->second == 0) return false;
    --it->second;
  }
  return true;
}

Graph build_graph(const std::vector<std::pair<int, int>>& edges, GraphMode mode, int n_hint) {
  int n = n_hint;
  for (const auto& [u, v] : edges) {
    if (u < 0 || v < 0) throw std::invalid_argument("build_graph: negative vertex id");
    n = std::max(n, std::max(u, v) + 1);
  }
  Graph g(mode);
  for (int i = 0; i < n; ++i) g.add_vertex();
  for (const auto& [u, v] : edges) g.add_edge(u, v);
  return g;
}

PrefixGraph subgraph_prefix(const Graph& g, const std::vector<int>& order, int t) {
  if (t < 1 || t > static_cast<int>(order.size())) throw std::invalid_argument("subgraph_prefix: t out of range");
  std::vector<char> used(g.edge_count(), 0);
  PrefixGraph out;
  out.compact_of.assign(g.vertex_count(), -1);
  std::vector<std::pair<int, int>> picked;
  picked.reserve(t);
  for (int i = 0; i < t; ++i) {
    const int e = order[i];
    if (e < 0 || e >= g.edge_count()) throw std::invalid_argument("subgraph_prefix: edge index out of range");
    if (used[e]) throw std::invalid_argument("subgraph_prefix: duplicate edge index in order");
    used[e] = 1;
    picked.push_back(g.edge(e));
  }
  out.graph = Graph(g.mode());
  for (const auto& [u, v] : picked) {
    for (int w : {u, v}) {
      if (out.compact_of[w] < 0) {
        out.compact_of[w] = out.graph.add_vertex();
        out.vertex_of.push_back(w);
      }
    }
    out.graph.add_edge(out.compact_of[u], out.compact_of[v]);
  }
  return out;
}

std::vector<int> feasible_edges(const Graph& g, const std::vector<char>& inserted) {
  if (static_cast<int>(inserted.size()) != g.edge_count())
    throw std::invalid_argument("feasible_edges: mask size mismatch");
  std::vector<char> present(g.vertex_count(), 0);
  int placed = 0;
  for (int e = 0; e < g.edge_count(); ++e) {
    if (inserted[e]) {
      present[g.edge(e).first] = 1;
      present[g.edge(e).second] = 1;
      ++placed;
    }
  }
  if (placed == 0) throw std::invalid_argument("feasible_edges: no edge placed yet");
  std::vector<int> out;
  for (int e = 0; e < g.edge_count(); ++e) {
    if (inserted[e]) continue;
    if (present[g.edge(e).first] || present[g.edge(e).second]) out.push_back(e);
  }
  return out;
}

std::vector<int> bfs_distances(const Graph& g, int src) {
  std::vector<int> dist(g.vertex_count(), -1);
  std::queue<int> q;
  dist[src] = 0;
  q.push(src);
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (int v : g.neighbors(u)) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        q.push(v);
      }
    }
  }
  return dist;
}

GraphMetrics graph_metrics(const Graph& g) {
  const Graph s = g.mode() == GraphMode::Simple ? g : g.simple_skeleton();
  GraphMetrics m;
  m.vertices = g.vertex_count();
  m.edges = g.edge_count();
  m.connected = g.is_connected();
  const int n = s.vertex_count();
  if (n == 0) return m;

  // Largest component by repeated BFS.
  std::vector<int> comp(n, -1);
  int ncomp = 0;
  std::vector<int> comp_size;
  for (int v = 0; v < n; ++v) {
    if (comp[v] >= 0) continue;
    std::queue<int> q;
    q.push(v);
    comp[v] = ncomp;
    int size = 1;
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int w : s.neighbors(u)) {
        if (comp[w] < 0) {
          comp[w] = ncomp;
          ++size;
          q.push(w);
        }
      }
    }
    comp_size.push_back(size);
    ++ncomp;
  }
  int big = 0;
  for (int c = 1; c < ncomp; ++c) {
    if (comp_size[c] > comp_size[big]) big = c;
  }
  m.largest_component = comp_size[big];

  // Distance statistics over the largest component.
  std::int64_t pair_count = 0;
  std::int64_t dist_sum = 0;
  int diam = 0;
  for (int v = 0; v < n; ++v) {
    if (comp[v] != big) continue;
    const std::vector<int> dist = bfs_distances(s, v);
    for (int u = v + 1; u < n; ++u) {
      if (comp[u] != big) continue;
      dist_sum += dist[u];
      ++pair_count;
      diam = std::max(diam, dist[u]);
    }
  }
  m.diameter = diam;
  m.mean_shortest_path = pair_count > 0 ? static_cast<double>(dist_sum) / static_cast<double>(pair_count) : 0.0;

  // Triangle counts on the skeleton; wedges from degrees.
  std::vector<std::int64_t> tri(n, 0);
  std::int64_t triangles = 0;
  std::vector<char> mark(n, 0);
  for (int v = 0; v < n; ++v) {
    for (int w : s.neighbors(v)) mark[w] = 1;
    for (int w : s.neighbors(v)) {
      if (w <= v) continue;
      for (int x : s.neighbors(w)) {
        if (x > w && mark[x]) {
          ++tri[v];
          ++tri[w];
          ++tri[x];
          ++triangles;
        }
      }
    }
    for (int w : s.neighbors(v)) mark[w] = 0;
  }
  std::int64_t wedges = 0;
  double local_sum = 0.0;
  for (int v = 0; v < n; ++v) {
    const std::int64_t d = s.degree(v);
    wedges += d * (d - 1) / 2;
    if (d >= 2) local_sum += 2.0 * static_cast<double>(tri[v]) / (static_cast<double>(d) * static_cast<double>(d - 1));
  }
  m.clustering_global = wedges > 0 ? 3.0 * static_cast<double>(triangles) / static_cast<double>(wedges) : 0.0;
  m.clustering_mean_local = n > 0 ? local_sum / static_cast<double>(n) : 0.0;
  return m;
}

}  // namespace rwnet
