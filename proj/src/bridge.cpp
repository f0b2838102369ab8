#include "rwnet/bridge.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <unordered_map>
#include <utility>

#include "rwnet/rng.hpp"
#include "rwnet/spectral.hpp"

namespace rwnet {

namespace {

// Growing insertion-order prefix. The graph spans the full vertex set of the
// target; vertices not yet touched stay isolated and the walk machinery
// ignores them.
struct PState {
  Graph state;
  std::vector<char> inserted;
  std::vector<char> present;
  std::vector<int> order;
  int n_present = 0;
  std::uint64_t set_hash = 0;  // commutative over inserted edge ids

  void insert(const Graph& target, int e) {
    auto [a, b] = target.edge(e);
    if (!present[a]) {
      present[a] = 1;
      ++n_present;
    }
    if (!present[b]) {
      present[b] = 1;
      ++n_present;
    }
    state.add_edge(a, b);
    inserted[e] = 1;
    order.push_back(e);
    set_hash += splitmix64(0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(e));
  }
};

PState make_initial_state(const Graph& target, int first_edge) {
  PState p;
  p.state = Graph(GraphMode::Multigraph);
  for (int v = 0; v < target.vertex_count(); ++v) p.state.add_vertex();
  p.inserted.assign(target.edge_count(), 0);
  p.present.assign(target.vertex_count(), 0);
  p.insert(target, first_edge);
  return p;
}

double select_weight(const PState& p, Selection sel, int v) {
  if (sel == Selection::Uniform) return 1.0 / p.n_present;
  return static_cast<double>(p.state.degree(v)) / p.state.volume();
}

std::vector<int> feasible_of(const PState& p, const Graph& target) {
  std::vector<int> out;
  for (int e = 0; e < target.edge_count(); ++e) {
    if (p.inserted[e]) continue;
    auto [a, b] = target.edge(e);
    if (p.present[a] || p.present[b]) out.push_back(e);
  }
  return out;
}

struct EventTable {
  std::vector<int> edges;
  std::vector<double> mass;
  double tau = 0.0;
};

// Placement probabilities for every feasible edge of `target` given the
// prefix in `p`. Kernel entries come from batched walk rows on the prefix;
// the reverse direction of a pair event reuses the forward row through
// degree reversibility.
EventTable make_event_table(const PState& p, const Graph& target, const ModelConfig& proto,
                            const StepLaw& sl, const std::vector<int>& feasible) {
  const bool simple = proto.mode == GraphMode::Simple;
  const int n = target.vertex_count();

  std::vector<int> row_of(n, -1);
  std::vector<int> starts;
  auto need_row = [&](int v) {
    if (row_of[v] < 0) {
      row_of[v] = static_cast<int>(starts.size());
      starts.push_back(v);
    }
  };
  for (int e : feasible) {
    auto [a, b] = target.edge(e);
    if (a == b) {
      need_row(a);
    } else if (p.present[a] && p.present[b]) {
      continue;  // second pass, after single-endpoint rows are claimed
    } else if (simple) {
      need_row(p.present[a] ? a : b);  // closed-neighborhood sums need the row
    }
  }
  for (int e : feasible) {
    auto [a, b] = target.edge(e);
    if (a == b || !p.present[a] || !p.present[b]) continue;
    if (row_of[a] < 0 && row_of[b] < 0) need_row(a);
  }

  Eigen::MatrixXd rows;
  if (!starts.empty()) {
    CsrGraph csr = CsrGraph::from_graph(p.state);
    rows = mixed_rows(csr, starts, sl.walk);
  }

  EventTable table;
  table.edges.reserve(feasible.size());
  table.mass.reserve(feasible.size());
  for (int e : feasible) {
    auto [a, b] = target.edge(e);
    double q = 0.0;
    if (a == b) {
      q = (1.0 - sl.alpha) * select_weight(p, proto.selection, a) * rows(row_of[a], a);
    } else if (p.present[a] && p.present[b]) {
      int fwd = row_of[a] >= 0 ? a : b;
      int rev = fwd == a ? b : a;
      double q_fr = rows(row_of[fwd], rev);
      double q_rf = q_fr * p.state.degree(fwd) / p.state.degree(rev);
      q = (1.0 - sl.alpha) * (select_weight(p, proto.selection, fwd) * q_fr +
                              select_weight(p, proto.selection, rev) * q_rf);
    } else {
      int anchor = p.present[a] ? a : b;
      double mu = select_weight(p, proto.selection, anchor);
      if (simple) {
        double closed = rows(row_of[anchor], anchor);
        for (int w : p.state.neighbors(anchor)) closed += rows(row_of[anchor], w);
        q = mu * (sl.alpha + (1.0 - sl.alpha) * closed);
      } else {
        q = sl.alpha * mu;
      }
    }
    table.edges.push_back(e);
    table.mass.push_back(q);
    table.tau += q;
  }
  return table;
}

double event_mass_single(const PState& p, const Graph& target, const ModelConfig& proto,
                         const StepLaw& sl, int e) {
  std::vector<int> one{e};
  EventTable t = make_event_table(p, target, proto, sl, one);
  return t.mass[0];
}

std::vector<int> multinomial_draws(const std::vector<double>& w, int count, Rng& rng) {
  std::vector<int> out(count);
  for (int i = 0; i < count; ++i) out[i] = rng.categorical(w);
  return out;
}

std::vector<int> stratified_draws(const std::vector<double>& w, int count, Rng& rng) {
  double total = 0.0;
  for (double x : w) total += x;
  std::vector<int> out(count);
  double cum = w.empty() ? 0.0 : w[0];
  int j = 0;
  for (int i = 0; i < count; ++i) {
    double u = total * (i + rng.uniform()) / count;
    while (u > cum && j + 1 < static_cast<int>(w.size())) cum += w[++j];
    out[i] = j;
  }
  return out;
}

void validate_reference(const Graph& target, const std::vector<int>& ref) {
  const int T = target.edge_count();
  if (static_cast<int>(ref.size()) != T)
    throw std::invalid_argument("bridge: reference order length does not match edge count");
  std::vector<char> seen(T, 0);
  for (int e : ref) {
    if (e < 0 || e >= T || seen[e])
      throw std::invalid_argument("bridge: reference order is not a permutation of edge ids");
    seen[e] = 1;
  }
}

}  // namespace

BridgeResult run_bridge_with_laws(const Graph& target, const ModelConfig& proto, const StepLawFn& laws,
                                  int particles, bool stratified, std::uint64_t seed,
                                  const std::vector<int>* reference) {
  const int T = target.edge_count();
  const int N = particles;
  if (T < 1) throw std::invalid_argument("bridge: target has no edges");
  if (N < 1) throw std::invalid_argument("bridge: need at least one particle");
  if (reference) {
    if (N < 2) throw std::invalid_argument("bridge: conditional run needs at least two particles");
    validate_reference(target, *reference);
  }
  if (!target.is_connected()) throw std::invalid_argument("bridge: target graph must be connected");

  BridgeResult result;
  if (T == 1) {
    result.histories.assign(N, {0});
    result.selected = {0};
    return result;
  }

  std::vector<PState> parts;
  parts.reserve(N);
  for (int i = 0; i < N; ++i) {
    Rng rng = Rng::substream(seed, 1, static_cast<std::uint64_t>(i));
    int e0 = (reference && i == 0) ? (*reference)[0] : rng.uniform_int(T);
    parts.push_back(make_initial_state(target, e0));
  }
  std::vector<double> weights(N, 1.0 / N);

  // Steps 2..T-1 propose one edge each; the step T insertion is forced, and
  // its probability folds into the T-1 weight. The trajectory-feasibility
  // correction factor is identically one because proposals never leave the
  // completable set.
  for (int t = 2; t <= T - 1; ++t) {
    Rng res_rng = Rng::substream(seed, 2, static_cast<std::uint64_t>(t));
    std::vector<int> ancestors;
    if (reference) {
      ancestors = multinomial_draws(weights, N - 1, res_rng);
      ancestors.insert(ancestors.begin(), 0);
    } else if (stratified) {
      ancestors = stratified_draws(weights, N, res_rng);
    } else {
      ancestors = multinomial_draws(weights, N, res_rng);
    }
    result.ancestor_trace.push_back(ancestors);

    const StepLaw sl = laws(t);
    std::unordered_map<std::uint64_t, EventTable> tables;
    auto table_for = [&](const PState& p) -> const EventTable& {
      auto it = tables.find(p.set_hash);
      if (it != tables.end()) return it->second;
      std::vector<int> feas = feasible_of(p, target);
      EventTable tab = make_event_table(p, target, proto, sl, feas);
      return tables.emplace(p.set_hash, std::move(tab)).first->second;
    };

    std::vector<PState> children;
    children.reserve(N);
    std::vector<double> next_w(N, 0.0);
    for (int i = 0; i < N; ++i) {
      const PState& parent = parts[ancestors[i]];
      const EventTable& tab = table_for(parent);
      PState child = parent;
      int e;
      if (reference && i == 0) {
        e = (*reference)[t - 1];
      } else {
        Rng prop_rng = Rng::substream(seed, 3, static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(i));
        int idx = prop_rng.categorical(tab.mass);
        e = tab.edges[idx];
      }
      child.insert(target, e);
      next_w[i] = tab.tau;
      children.push_back(std::move(child));
    }

    if (t == T - 1) {
      const StepLaw sl_final = laws(T);
      std::unordered_map<std::uint64_t, double> final_q;
      for (int i = 0; i < N; ++i) {
        const PState& c = children[i];
        auto it = final_q.find(c.set_hash);
        double q;
        if (it != final_q.end()) {
          q = it->second;
        } else {
          int f = -1;
          for (int e = 0; e < T; ++e)
            if (!c.inserted[e]) {
              f = e;
              break;
            }
          q = event_mass_single(c, target, proto, sl_final, f);
          final_q.emplace(c.set_hash, q);
        }
        next_w[i] *= q;
      }
    }

    double total = 0.0;
    for (double w : next_w) total += w;
    if (!(total > 0.0)) throw std::runtime_error("bridge: all particles reached zero-mass states");
    result.log_increments.push_back(std::log(total / N));
    for (double& w : next_w) w /= total;
    weights = std::move(next_w);
    parts = std::move(children);
  }

  if (T == 2) {
    // No intermediate steps: the lone weight is the forced-edge probability.
    const StepLaw sl_final = laws(2);
    std::unordered_map<std::uint64_t, double> final_q;
    for (int i = 0; i < N; ++i) {
      const PState& p = parts[i];
      auto it = final_q.find(p.set_hash);
      double q;
      if (it != final_q.end()) {
        q = it->second;
      } else {
        int f = p.inserted[0] ? 1 : 0;
        q = event_mass_single(p, target, proto, sl_final, f);
        final_q.emplace(p.set_hash, q);
      }
      weights[i] = q;
    }
    double total = 0.0;
    for (double w : weights) total += w;
    if (!(total > 0.0)) throw std::runtime_error("bridge: all particles reached zero-mass states");
    result.log_increments.push_back(std::log(total / N));
    for (double& w : weights) w /= total;
  }

  for (double inc : result.log_increments) result.loglik += inc;

  auto complete_order = [&](const PState& p) {
    std::vector<int> order = p.order;
    for (int e = 0; e < T; ++e)
      if (!p.inserted[e]) order.push_back(e);
    return order;
  };

  Rng emit_rng = Rng::substream(seed, 4);
  result.histories.reserve(N);
  for (int i = 0; i < N; ++i) result.histories.push_back(complete_order(parts[emit_rng.categorical(weights)]));
  Rng pick_rng = Rng::substream(seed, 5);
  result.selected = complete_order(parts[pick_rng.categorical(weights)]);
  return result;
}

BridgeResult run_bridge(const Graph& target, const BridgeConfig& cfg) {
  TruncatedLaw walk = truncate_law(cfg.model.law, 1e-12);
  StepLaw sl{cfg.model.alpha, std::move(walk)};
  return run_bridge_with_laws(target, cfg.model, [sl](int) { return sl; }, cfg.particles,
                              cfg.stratified, cfg.seed, nullptr);
}

BridgeResult run_conditional_bridge(const Graph& target, const BridgeConfig& cfg,
                                    const std::vector<int>& reference) {
  TruncatedLaw walk = truncate_law(cfg.model.law, 1e-12);
  StepLaw sl{cfg.model.alpha, std::move(walk)};
  return run_bridge_with_laws(target, cfg.model, [sl](int) { return sl; }, cfg.particles,
                              cfg.stratified, cfg.seed, &reference);
}

double estimate_bridge_loglik(const Graph& target, const BridgeConfig& cfg) {
  return run_bridge(target, cfg).loglik;
}

namespace {

// Probability of placing target edge e on top of the compacted prefix,
// looked up in the full analytic event distribution. Independent of the
// row-based tables used by the particle system.
double oracle_event_prob(const EventDistribution& dist, const PrefixGraph& prefix,
                         const Graph& target, int e) {
  auto [a, b] = target.edge(e);
  int ca = prefix.compact_of[a];
  int cb = prefix.compact_of[b];
  EdgeEvent::Kind kind;
  int v, u;
  if (ca >= 0 && cb >= 0) {
    if (ca == cb) {
      kind = EdgeEvent::Kind::SelfLoop;
      v = ca;
      u = ca;
    } else {
      kind = EdgeEvent::Kind::Pair;
      v = std::min(ca, cb);
      u = std::max(ca, cb);
    }
  } else {
    kind = EdgeEvent::Kind::NewVertex;
    v = ca >= 0 ? ca : cb;
    u = -1;
  }
  for (std::size_t i = 0; i < dist.events.size(); ++i) {
    const EdgeEvent& ev = dist.events[i];
    if (ev.kind != kind) continue;
    if (kind == EdgeEvent::Kind::Pair) {
      if (ev.v == v && ev.u == u) return dist.prob[i];
    } else if (ev.v == v) {
      return dist.prob[i];
    }
  }
  return 0.0;
}

void oracle_dfs(const Graph& target, const ModelConfig& model, std::vector<int>& order,
                std::vector<char>& inserted, double logp, ExactPosterior& out) {
  const int T = target.edge_count();
  if (static_cast<int>(order.size()) == T) {
    out.orders.push_back(order);
    out.log_prob.push_back(logp);
    return;
  }
  PrefixGraph prefix = subgraph_prefix(target, order, static_cast<int>(order.size()));
  EventDistribution dist = edge_event_distribution(prefix.graph, model);
  for (int e = 0; e < T; ++e) {
    if (inserted[e]) continue;
    auto [a, b] = target.edge(e);
    if (prefix.compact_of[a] < 0 && prefix.compact_of[b] < 0) continue;
    double q = oracle_event_prob(dist, prefix, target, e);
    if (q <= 0.0) continue;
    inserted[e] = 1;
    order.push_back(e);
    oracle_dfs(target, model, order, inserted, logp + std::log(q), out);
    order.pop_back();
    inserted[e] = 0;
  }
}

}  // namespace

ExactPosterior exact_posterior(const Graph& target, const ModelConfig& model, int max_edges) {
  const int T = target.edge_count();
  if (T < 1) throw std::invalid_argument("exact_posterior: target has no edges");
  if (T > max_edges) throw std::invalid_argument("exact_posterior: too many edges for enumeration");
  if (!target.is_connected()) throw std::invalid_argument("exact_posterior: target must be connected");

  ExactPosterior out;
  std::vector<int> order;
  std::vector<char> inserted(T, 0);
  const double log_first = -std::log(static_cast<double>(T));
  for (int e = 0; e < T; ++e) {
    inserted[e] = 1;
    order.push_back(e);
    oracle_dfs(target, model, order, inserted, log_first, out);
    order.pop_back();
    inserted[e] = 0;
  }
  if (out.orders.empty()) throw std::runtime_error("exact_posterior: no completable orders found");

  double max_lp = -std::numeric_limits<double>::infinity();
  for (double lp : out.log_prob) max_lp = std::max(max_lp, lp);
  double z = 0.0;
  for (double lp : out.log_prob) z += std::exp(lp - max_lp);
  out.log_marginal = max_lp + std::log(z);
  out.posterior.reserve(out.orders.size());
  for (double lp : out.log_prob) out.posterior.push_back(std::exp(lp - out.log_marginal));
  return out;
}

void write_histories(std::ostream& out, const std::vector<std::vector<int>>& histories) {
  for (const auto& h : histories) {
    for (std::size_t i = 0; i < h.size(); ++i) {
      if (i) out << ',';
      out << h[i];
    }
    out << '\n';
  }
}

}  // namespace rwnet
