#pragma once

// Shared fixtures and oracles for the unit and acceptance suites. The dense
// linear-algebra oracles here deliberately avoid the library's spectral and
// batched-row code paths so the two sides of every comparison stay
// independent.

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "rwnet/bridge.hpp"
#include "rwnet/generative.hpp"
#include "rwnet/graph.hpp"
#include "rwnet/netstats.hpp"
#include "rwnet/pmcmc.hpp"
#include "rwnet/rng.hpp"
#include "rwnet/walk_law.hpp"

namespace testsup {

using namespace rwnet;

inline Graph two_vertex_graph(GraphMode mode = GraphMode::Multigraph) {
  Graph g(mode);
  g.add_vertex();
  g.add_vertex();
  g.add_edge(0, 1);
  return g;
}

inline Graph complete_graph(int n, GraphMode mode = GraphMode::Simple) {
  Graph g(mode);
  for (int i = 0; i < n; ++i) g.add_vertex();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

inline Graph cycle_graph(int n, GraphMode mode = GraphMode::Simple) {
  Graph g(mode);
  for (int i = 0; i < n; ++i) g.add_vertex();
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

inline Graph path_graph(int n, GraphMode mode = GraphMode::Simple) {
  Graph g(mode);
  for (int i = 0; i < n; ++i) g.add_vertex();
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

inline Graph star_graph(int leaves, GraphMode mode = GraphMode::Simple) {
  Graph g(mode);
  for (int i = 0; i <= leaves; ++i) g.add_vertex();
  for (int i = 1; i <= leaves; ++i) g.add_edge(0, i);
  return g;
}

inline Graph wheel_graph(int rim, GraphMode mode = GraphMode::Simple) {
  Graph g(mode);
  for (int i = 0; i <= rim; ++i) g.add_vertex();
  for (int i = 1; i <= rim; ++i) {
    g.add_edge(0, i);
    g.add_edge(i, i % rim + 1);
  }
  return g;
}

inline Graph petersen_graph(GraphMode mode = GraphMode::Simple) {
  Graph g(mode);
  for (int i = 0; i < 10; ++i) g.add_vertex();
  for (int i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);          // outer pentagon
    g.add_edge(5 + i, 5 + (i + 2) % 5);  // inner pentagram
    g.add_edge(i, 5 + i);                // spokes
  }
  return g;
}

// Triangle with one pendant edge, four edges total.
inline Graph lollipop4(GraphMode mode = GraphMode::Simple) {
  Graph g(mode);
  for (int i = 0; i < 4; ++i) g.add_vertex();
  g.add_edge(0, 1);
  g.add_edge(0, 2);
  g.add_edge(1, 2);
  g.add_edge(2, 3);
  return g;
}

// Four-leaf star with a pendant hanging off one leaf, five edges total.
inline Graph star_pendant5(GraphMode mode = GraphMode::Simple) {
  Graph g(mode);
  for (int i = 0; i < 6; ++i) g.add_vertex();
  g.add_edge(0, 1);
  g.add_edge(0, 2);
  g.add_edge(0, 3);
  g.add_edge(0, 4);
  g.add_edge(1, 5);
  return g;
}

// Random spanning tree plus distinct extra edges; always connected, simple.
inline Graph random_connected_graph(int n, int extra, Rng& rng) {
  Graph g(GraphMode::Simple);
  for (int i = 0; i < n; ++i) g.add_vertex();
  for (int i = 1; i < n; ++i) g.add_edge(rng.uniform_int(i), i);
  int placed = 0, attempts = 0;
  while (placed < extra && attempts < 50 * (extra + 1)) {
    ++attempts;
    int a = rng.uniform_int(n);
    int b = rng.uniform_int(n);
    if (a == b || g.is_adjacent(a, b)) continue;
    g.add_edge(a, b);
    ++placed;
  }
  return g;
}

// Random tree plus arbitrary extra edges, self-loops and parallels allowed.
inline Graph random_connected_multigraph(int n, int extra, Rng& rng) {
  Graph g(GraphMode::Multigraph);
  for (int i = 0; i < n; ++i) g.add_vertex();
  for (int i = 1; i < n; ++i) g.add_edge(rng.uniform_int(i), i);
  for (int i = 0; i < extra; ++i) g.add_edge(rng.uniform_int(n), rng.uniform_int(n));
  return g;
}

inline StatVector degree_stat(const Graph& g, int max_degree = -1) {
  StatVector sv;
  sv.kind = StatKind::Degree;
  for (int v = 0; v < g.vertex_count(); ++v) {
    int d = g.degree(v);
    if (max_degree >= 0 && d > max_degree) continue;
    sv.values[d] += 1.0;
  }
  return sv;
}

// Dense one-step walk matrix; rows of isolated vertices are zero.
inline Eigen::MatrixXd dense_walk_matrix(const Graph& g) {
  const int n = g.vertex_count();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int v = 0; v < n; ++v) {
    int d = g.degree(v);
    if (d == 0) continue;
    for (int w : g.neighbors(v)) m(v, w) += 1.0 / d;
  }
  return m;
}

// Dense mixed kernel by direct power accumulation, independent of the
// library's eigendecomposition and batched-row paths.
inline Eigen::MatrixXd dense_mixed_kernel(const Graph& g, const WalkLengthLaw& law, double tol = 1e-13) {
  const int n = g.vertex_count();
  Eigen::MatrixXd m = dense_walk_matrix(g);
  TruncatedLaw tl = truncate_law(law, tol);
  Eigen::MatrixXd acc = Eigen::MatrixXd::Identity(n, n) * tl.weight0;
  Eigen::MatrixXd power = Eigen::MatrixXd::Identity(n, n);
  for (std::size_t i = 0; i < tl.weights.size(); ++i) {
    power = power * m;
    acc += tl.weights[i] * power;
  }
  return acc;
}

inline double mean_of(const std::vector<double>& xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s / xs.size();
}

inline double sd_of(const std::vector<double>& xs) {
  double m = mean_of(xs);
  double v = 0.0;
  for (double x : xs) v += (x - m) * (x - m);
  return std::sqrt(v / (xs.size() - 1.0));
}

// ---------------------------------------------------------------------------
// Exact joint law of (insertion order, branch flags) for small simple
// targets, with walk lengths integrated against the Gamma prior. Used to
// test single-step stationarity of the collapsed Gibbs kernel.
// ---------------------------------------------------------------------------

struct ExactJointEntry {
  std::vector<int> order;
  std::vector<int> b;  // aligned with order; entry 0 is the seed (b = 1)
  double prob = 0.0;   // normalized over all entries
  double log_unnorm = 0.0;
  std::vector<int> walk_positions;          // positions s >= 1 with b = 0
  std::vector<std::vector<double>> phi;     // per walk position: phi(c) = w(c + 1) / c!
  double log_scalar = 0.0;                  // log of the length-free factors
};

class ExactJoint {
 public:
  ExactJoint(const Graph& target, Selection sel, const Priors& priors, int kcap = 240)
      : target_(target), sel_(sel), priors_(priors), kcap_(kcap) {
    if (target.mode() != GraphMode::Simple)
      throw std::invalid_argument("ExactJoint: simple targets only");
    const int T = target.edge_count();
    if (T > 7) throw std::invalid_argument("ExactJoint: target too large");
    std::vector<int> order;
    std::vector<char> inserted(T, 0);
    for (int e = 0; e < T; ++e) {
      inserted[e] = 1;
      order.push_back(e);
      enumerate_orders(order, inserted);
      order.pop_back();
      inserted[e] = 0;
    }
    normalize();
  }

  const std::vector<ExactJointEntry>& entries() const { return entries_; }

  int index_of(const std::vector<int>& order, const std::vector<int>& b) const {
    auto it = index_.find(key_of(order, b));
    return it == index_.end() ? -1 : it->second;
  }

  LatentState sample_state(Rng& rng) const {
    std::vector<double> probs;
    probs.reserve(entries_.size());
    for (const auto& e : entries_) probs.push_back(e.prob);
    const ExactJointEntry& ent = entries_[rng.categorical(probs)];
    LatentState st;
    st.order = ent.order;
    st.b = ent.b;
    st.k.assign(ent.order.size(), -1);

    // Walk-step counts by backward sampling through the convolutions, then
    // attach-step counts from the sequential predictive.
    const int J = static_cast<int>(ent.walk_positions.size());
    std::vector<std::vector<double>> partial(J + 1);
    partial[0] = {1.0};
    for (int j = 0; j < J; ++j) partial[j + 1] = convolve(partial[j], ent.phi[j]);
    const double W = static_cast<double>(J);
    std::vector<double> log_w(partial[J].size(), -std::numeric_limits<double>::infinity());
    double max_lw = -std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < partial[J].size(); ++s) {
      if (partial[J][s] <= 0.0) continue;
      log_w[s] = std::log(partial[J][s]) + log_c_factor(static_cast<int>(s), W);
      max_lw = std::max(max_lw, log_w[s]);
    }
    std::vector<double> s_weights(log_w.size(), 0.0);
    for (std::size_t s = 0; s < log_w.size(); ++s)
      if (std::isfinite(log_w[s])) s_weights[s] = std::exp(log_w[s] - max_lw);
    int s_total = rng.categorical(s_weights);
    for (int j = J - 1; j >= 0; --j) {
      std::vector<double> w(std::min<std::size_t>(ent.phi[j].size(), s_total + 1), 0.0);
      for (std::size_t c = 0; c < w.size(); ++c) {
        int rem = s_total - static_cast<int>(c);
        if (rem < static_cast<int>(partial[j].size())) w[c] = ent.phi[j][c] * partial[j][rem];
      }
      int c = rng.categorical(w);
      st.k[ent.walk_positions[j]] = c + 1;
      s_total -= c;
    }

    double kappa = priors_.a_lambda + 0.0;
    double tau = priors_.b_lambda + W;
    // s_total was consumed; recover the walk total for the predictive chain.
    double s_walk = 0.0;
    for (int j = 0; j < J; ++j) s_walk += st.k[ent.walk_positions[j]] - 1;
    kappa += s_walk;
    for (std::size_t s = 1; s < st.order.size(); ++s) {
      if (ent.b[s] == 1) {
        int c = static_cast<int>(rng.neg_binomial(kappa, 1.0 / (1.0 + tau)));
        st.k[s] = c + 1;
        kappa += c;
        tau += 1.0;
      }
    }
    return st;
  }

 private:
  static std::string key_of(const std::vector<int>& order, const std::vector<int>& b) {
    std::string key;
    for (int e : order) key += std::to_string(e) + ',';
    key += '|';
    for (std::size_t s = 1; s < b.size(); ++s) key += b[s] ? '1' : '0';
    return key;
  }

  static std::vector<double> convolve(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
  }

  // log integral of exp(-W t) t^s against the Gamma(a, rate b) prior density.
  double log_c_factor(int s, double W) const {
    const double a = priors_.a_lambda, b = priors_.b_lambda;
    return a * std::log(b) + std::lgamma(a + s) - std::lgamma(a) - (a + s) * std::log(b + W);
  }

  void enumerate_orders(std::vector<int>& order, std::vector<char>& inserted) {
    const int T = target_.edge_count();
    if (static_cast<int>(order.size()) == T) {
      expand_branches(order);
      return;
    }
    for (int e = 0; e < T; ++e) {
      if (inserted[e]) continue;
      auto [a, b] = target_.edge(e);
      bool touches = false;
      for (int x : order) {
        auto [u, v] = target_.edge(x);
        if (a == u || a == v || b == u || b == v) {
          touches = true;
          break;
        }
      }
      if (!touches) continue;
      inserted[e] = 1;
      order.push_back(e);
      enumerate_orders(order, inserted);
      order.pop_back();
      inserted[e] = 0;
    }
  }

  void expand_branches(const std::vector<int>& order) {
    const int T = target_.edge_count();
    const int n = target_.vertex_count();
    // Prefix bookkeeping along this order.
    Graph prefix(GraphMode::Multigraph);
    for (int v = 0; v < n; ++v) prefix.add_vertex();
    std::vector<char> present(n, 0);
    int n_present = 0;
    auto mu = [&](int v) {
      return sel_ == Selection::Uniform ? 1.0 / n_present
                                        : static_cast<double>(prefix.degree(v)) / prefix.volume();
    };

    struct StepInfo {
      bool new_vertex = false;
      int anchor = -1;                  // present endpoint of a new-vertex step
      double log_mu_attach = 0.0;       // log mu(anchor) for the attach branch
      std::vector<double> w_pair;       // pair step: length factors
      std::vector<double> w_return;     // new-vertex step: collision length factors
    };
    std::vector<StepInfo> info(T);

    auto touch = [&](int v) {
      if (!present[v]) {
        present[v] = 1;
        ++n_present;
      }
    };
    {
      auto [a, b] = target_.edge(order[0]);
      touch(a);
      touch(b);
      prefix.add_edge(a, b);
    }
    for (int s = 1; s < T; ++s) {
      auto [a, b] = target_.edge(order[s]);
      StepInfo& si = info[s];
      si.new_vertex = !present[a] || !present[b];
      Eigen::MatrixXd m = dense_walk_matrix(prefix);
      if (si.new_vertex) {
        si.anchor = present[a] ? a : b;
        si.log_mu_attach = std::log(mu(si.anchor));
        Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(n);
        row(si.anchor) = 1.0;
        si.w_return.resize(kcap_);
        for (int l = 1; l <= kcap_; ++l) {
          row = row * m;
          double c = row(si.anchor);
          for (int w : prefix.neighbors(si.anchor)) c += row(w);
          si.w_return[l - 1] = mu(si.anchor) * c;
        }
      } else {
        Eigen::RowVectorXd ra = Eigen::RowVectorXd::Zero(n);
        Eigen::RowVectorXd rb = Eigen::RowVectorXd::Zero(n);
        ra(a) = 1.0;
        rb(b) = 1.0;
        si.w_pair.resize(kcap_);
        for (int l = 1; l <= kcap_; ++l) {
          ra = ra * m;
          rb = rb * m;
          si.w_pair[l - 1] = mu(a) * ra(b) + mu(b) * rb(a);
        }
      }
      touch(a);
      touch(b);
      prefix.add_edge(a, b);
    }

    // All branch assignments: pair steps are forced to b = 0.
    std::vector<int> free_positions;
    for (int s = 1; s < T; ++s)
      if (info[s].new_vertex) free_positions.push_back(s);
    const int F = static_cast<int>(free_positions.size());
    for (int mask = 0; mask < (1 << F); ++mask) {
      std::vector<int> b(T, 0);
      b[0] = 1;
      for (int i = 0; i < F; ++i) b[free_positions[i]] = (mask >> i) & 1;

      ExactJointEntry ent;
      ent.order = order;
      ent.b = b;
      double log_scalar = -std::log(static_cast<double>(T));
      int n1 = 0, n0 = 0;
      bool dead = false;
      for (int s = 1; s < T; ++s) {
        const StepInfo& si = info[s];
        if (b[s] == 1) {
          ++n1;
          log_scalar += si.log_mu_attach;
        } else {
          ++n0;
          const std::vector<double>& w = si.new_vertex ? si.w_return : si.w_pair;
          double total = 0.0;
          for (double x : w) total += x;
          if (total <= 0.0) {
            dead = true;
            break;
          }
          ent.walk_positions.push_back(s);
          std::vector<double> phi(w.size());
          double lf = 0.0;  // log c!
          for (std::size_t c = 0; c < w.size(); ++c) {
            if (c > 0) lf += std::log(static_cast<double>(c));
            phi[c] = w[c] * std::exp(-lf);
          }
          ent.phi.push_back(std::move(phi));
        }
      }
      if (dead) continue;
      log_scalar += std::lgamma(priors_.a_alpha + n1) + std::lgamma(priors_.b_alpha + n0) -
                    std::lgamma(priors_.a_alpha + priors_.b_alpha + n1 + n0) -
                    (std::lgamma(priors_.a_alpha) + std::lgamma(priors_.b_alpha) -
                     std::lgamma(priors_.a_alpha + priors_.b_alpha));
      ent.log_scalar = log_scalar;

      // Marginalize the walk counts: sum over the total with the Gamma
      // integral factor, in log space.
      std::vector<double> conv{1.0};
      for (const auto& p : ent.phi) conv = convolve(conv, p);
      const double W = static_cast<double>(ent.phi.size());
      double max_term = -std::numeric_limits<double>::infinity();
      std::vector<double> log_terms;
      log_terms.reserve(conv.size());
      for (std::size_t s = 0; s < conv.size(); ++s) {
        if (conv[s] <= 0.0) {
          log_terms.push_back(-std::numeric_limits<double>::infinity());
          continue;
        }
        double lt = std::log(conv[s]) + log_c_factor(static_cast<int>(s), W);
        log_terms.push_back(lt);
        max_term = std::max(max_term, lt);
      }
      double acc = 0.0;
      for (double lt : log_terms) acc += std::exp(lt - max_term);
      ent.log_unnorm = log_scalar + max_term + std::log(acc);
      index_[key_of(ent.order, ent.b)] = static_cast<int>(entries_.size());
      entries_.push_back(std::move(ent));
    }
  }

  void normalize() {
    double max_lp = -std::numeric_limits<double>::infinity();
    for (const auto& e : entries_) max_lp = std::max(max_lp, e.log_unnorm);
    double z = 0.0;
    for (const auto& e : entries_) z += std::exp(e.log_unnorm - max_lp);
    const double log_z = max_lp + std::log(z);
    for (auto& e : entries_) e.prob = std::exp(e.log_unnorm - log_z);
  }

  Graph target_;
  Selection sel_;
  Priors priors_;
  int kcap_;
  std::vector<ExactJointEntry> entries_;
  std::unordered_map<std::string, int> index_;
};

}  // namespace testsup
