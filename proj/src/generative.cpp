#include "rwnet/generative.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "rwnet/spectral.hpp"

namespace rwnet {

int simulate_walk(const Graph& g, int start, int steps, Rng& rng) {
  if (start < 0 || start >= g.vertex_count()) throw std::invalid_argument("simulate_walk: start out of range");
  if (steps < 0) throw std::invalid_argument("simulate_walk: negative step count");
  int cur = start;
  for (int s = 0; s < steps; ++s) {
    const auto& nb = g.neighbors(cur);
    if (nb.empty()) throw std::invalid_argument("simulate_walk: walk reached an isolated vertex");
    cur = nb[rng.uniform_int(static_cast<std::int64_t>(nb.size()))];
  }
  return cur;
}

namespace {

double selection_prob(const Graph& g, Selection sel, int v) {
  if (sel == Selection::Uniform) return 1.0 / g.vertex_count();
  return static_cast<double>(g.degree(v)) / static_cast<double>(g.volume());
}

int select_vertex(const Graph& g, Selection sel, Rng& rng) {
  if (sel == Selection::Uniform) return static_cast<int>(rng.uniform_int(g.vertex_count()));
  // Size biased: uniform edge, then a fair side coin; a self loop returns its
  // vertex either way, giving the degree-proportional law exactly.
  const auto& e = g.edge(static_cast<int>(rng.uniform_int(g.edge_count())));
  return rng.bernoulli(0.5) ? e.first : e.second;
}

}  // namespace

EventDistribution edge_event_distribution(const Graph& g, const ModelConfig& cfg) {
  if (g.edge_count() == 0) throw std::invalid_argument("edge_event_distribution: state must have an edge");
  const int n = g.vertex_count();
  const Eigen::MatrixXd q = rw_prob_matrix(g, cfg.law);
  EventDistribution out;
  const double a = cfg.alpha;
  for (int v = 0; v < n; ++v) {
    const double mu = selection_prob(g, cfg.selection, v);
    double mass = a * mu;
    if (cfg.mode == GraphMode::Simple) {
      // A walk ending at V or a current neighbor collides and spawns a vertex.
      double hit = q(v, v);
      for (int w = 0; w < n; ++w) {
        if (w != v && g.is_adjacent(v, w)) hit += q(v, w);
      }
      mass = mu * (a + (1.0 - a) * hit);
    }
    out.events.push_back({EdgeEvent::Kind::NewVertex, v, -1});
    out.prob.push_back(mass);
  }
  for (int v = 0; v < n; ++v) {
    const double mu_v = selection_prob(g, cfg.selection, v);
    for (int u = v + 1; u < n; ++u) {
      if (cfg.mode == GraphMode::Simple && g.is_adjacent(v, u)) continue;
      const double mu_u = selection_prob(g, cfg.selection, u);
      const double mass = (1.0 - a) * (mu_v * q(v, u) + mu_u * q(u, v));
      out.events.push_back({EdgeEvent::Kind::Pair, v, u});
      out.prob.push_back(mass);
    }
  }
  if (cfg.mode == GraphMode::Multigraph) {
    for (int v = 0; v < n; ++v) {
      const double mass = (1.0 - a) * selection_prob(g, cfg.selection, v) * q(v, v);
      out.events.push_back({EdgeEvent::Kind::SelfLoop, v, v});
      out.prob.push_back(mass);
    }
  }
  return out;
}

StepDraw sample_step(const Graph& g, const ModelConfig& cfg, Rng& rng) {
  StepDraw draw;
  const int v = select_vertex(g, cfg.selection, rng);
  if (rng.bernoulli(cfg.alpha)) {
    draw.event = {EdgeEvent::Kind::NewVertex, v, -1};
    draw.b = 1;
    draw.walk_length = -1;
    return draw;
  }
  draw.b = 0;
  draw.walk_length = cfg.law.sample(rng);
  const int end = simulate_walk(g, v, draw.walk_length, rng);
  if (cfg.mode == GraphMode::Simple) {
    if (end == v || g.is_adjacent(v, end)) {
      draw.event = {EdgeEvent::Kind::NewVertex, v, -1};
    } else {
      draw.event = {EdgeEvent::Kind::Pair, std::min(v, end), std::max(v, end)};
    }
    return draw;
  }
  if (end == v) {
    draw.event = {EdgeEvent::Kind::SelfLoop, v, v};
  } else {
    draw.event = {EdgeEvent::Kind::Pair, std::min(v, end), std::max(v, end)};
  }
  return draw;
}

namespace {

void apply_step(Graph& g, History& h, const StepDraw& draw) {
  switch (draw.event.kind) {
    case EdgeEvent::Kind::NewVertex: {
      const int u = g.add_vertex();
      g.add_edge(draw.event.v, u);
      break;
    }
    case EdgeEvent::Kind::Pair:
      g.add_edge(draw.event.v, draw.event.u);
      break;
    case EdgeEvent::Kind::SelfLoop:
      g.add_edge(draw.event.v, draw.event.v);
      break;
  }
  h.b_flags.push_back(draw.b);
  h.walk_lengths.push_back(draw.walk_length);
}

}  // namespace

GenerateResult rw_generate(const ModelConfig& cfg, int T, Rng& rng) {
  if (T < 1) throw std::invalid_argument("rw_generate: need at least the seed edge");
  if (cfg.alpha < 0.0 || cfg.alpha > 1.0) throw std::invalid_argument("rw_generate: alpha must lie in [0, 1]");
  GenerateResult res;
  res.graph = Graph::single_edge(cfg.mode);
  res.history.b_flags = {1};
  res.history.walk_lengths = {-1};
  for (int t = 2; t <= T; ++t) {
    const StepDraw draw = sample_step(res.graph, cfg, rng);
    apply_step(res.graph, res.history, draw);
  }
  return res;
}

GenerateResult acl_generate(double alpha, int T, Rng& rng) {
  if (T < 1) throw std::invalid_argument("acl_generate: need at least the seed edge");
  if (alpha < 0.0 || alpha > 1.0) throw std::invalid_argument("acl_generate: alpha must lie in [0, 1]");
  GenerateResult res;
  res.graph = Graph::single_edge(GraphMode::Multigraph);
  res.history.b_flags = {1};
  res.history.walk_lengths = {-1};
  for (int t = 2; t <= T; ++t) {
    Graph& g = res.graph;
    const int v = select_vertex(g, Selection::SizeBiased, rng);
    if (rng.bernoulli(alpha)) {
      const int u = g.add_vertex();
      g.add_edge(v, u);
      res.history.b_flags.push_back(1);
    } else {
      const int u = select_vertex(g, Selection::SizeBiased, rng);
      g.add_edge(v, u);
      res.history.b_flags.push_back(0);
    }
    res.history.walk_lengths.push_back(-1);
  }
  return res;
}

Graph er_generate(int n, int m, Rng& rng) {
  if (n < 0 || m < 0) throw std::invalid_argument("er_generate: negative size");
  const std::int64_t max_edges = static_cast<std::int64_t>(n) * (n - 1) / 2;
  if (m > max_edges) throw std::invalid_argument("er_generate: more edges than vertex pairs");
  Graph g(GraphMode::Simple);
  for (int i = 0; i < n; ++i) g.add_vertex();
  std::unordered_set<std::int64_t> chosen;
  while (static_cast<int>(chosen.size()) < m) {
    const int u = static_cast<int>(rng.uniform_int(n));
    const int v = static_cast<int>(rng.uniform_int(n));
    if (u == v) continue;
    const std::int64_t key = static_cast<std::int64_t>(std::min(u, v)) * n + std::max(u, v);
    if (chosen.insert(key).second) g.add_edge(u, v);
  }
  return g;
}

std::vector<SelfLoopDiagnosticRow> self_loop_diagnostic(const ModelConfig& cfg, int T,
                                                        const std::vector<int>& checkpoints, Rng& rng) {
  std::vector<int> points = checkpoints;
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  std::vector<SelfLoopDiagnosticRow> rows;
  GenerateResult res;
  res.graph = Graph::single_edge(cfg.mode);
  res.history.b_flags = {1};
  res.history.walk_lengths = {-1};
  const TruncatedLaw trunc = truncate_law(cfg.law, 1e-10);
  auto emit = [&](int t) {
    const Graph& g = res.graph;
    const CsrGraph csr = CsrGraph::from_graph(g);
    std::vector<int> starts(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) starts[v] = v;
    const Eigen::MatrixXd r = mixed_rows(csr, starts, trunc);
    std::vector<std::pair<int, std::pair<int, double>>> acc;  // degree -> (count, sum)
    for (int v = 0; v < g.vertex_count(); ++v) {
      const int d = g.degree(v);
      bool found = false;
      for (auto& [deg, cs] : acc) {
        if (deg == d) {
          cs.first += 1;
          cs.second += r(v, v);
          found = true;
          break;
        }
      }
      if (!found) acc.push_back({d, {1, r(v, v)}});
    }
    std::sort(acc.begin(), acc.end());
    for (const auto& [deg, cs] : acc) rows.push_back({t, deg, cs.first, cs.second / cs.first});
  };
  std::size_t next = 0;
  while (next < points.size() && points[next] < 2) ++next;
  for (int t = 2; t <= T; ++t) {
    const StepDraw draw = sample_step(res.graph, cfg, rng);
    apply_step(res.graph, res.history, draw);
    if (next < points.size() && points[next] == t) {
      emit(t);
      ++next;
    }
  }
  return rows;
}

}  // namespace rwnet
