#include "rwnet/pmcmc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>

#include "rwnet/rng.hpp"
#include "rwnet/spectral.hpp"

namespace rwnet {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(seed + kGolden * (a + 1)) + kGolden * (b + 1));
}

double logit(double x) { return std::log(x / (1.0 - x)); }
double expit(double x) { return 1.0 / (1.0 + std::exp(-x)); }

int graph_diameter(const Graph& g) {
  int diam = 0;
  for (int v = 0; v < g.vertex_count(); ++v) {
    std::vector<int> d = bfs_distances(g, v);
    for (int x : d)
      if (x >= 0) diam = std::max(diam, x);
  }
  return diam;
}

// Unnormalized negative-binomial-over-lengths weights w[l-1] for l = 1..len,
// built by the pmf ratio recurrence. Returns the truncated tail mass.
double nb_length_weights(double r, double p, int len, std::vector<double>& w) {
  w.assign(len, 0.0);
  double f = std::exp(r * std::log1p(-p));
  double cum = 0.0;
  for (int l = 1; l <= len; ++l) {
    w[l - 1] = f;
    cum += f;
    f *= p * (l - 1.0 + r) / l;
  }
  return std::max(0.0, 1.0 - cum);
}

struct PrefixTracker {
  Graph state;
  std::vector<char> present;
  int n_present = 0;

  explicit PrefixTracker(int n) : state(GraphMode::Multigraph), present(n, 0) {
    for (int v = 0; v < n; ++v) state.add_vertex();
  }

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
  }

  double select_weight(Selection sel, int v) const {
    if (sel == Selection::Uniform) return 1.0 / n_present;
    return static_cast<double>(state.degree(v)) / state.volume();
  }
};

}  // namespace

double Priors::log_density(double alpha, double lambda) const {
  if (alpha <= 0.0 || alpha >= 1.0 || lambda <= 0.0) return -std::numeric_limits<double>::infinity();
  double lb = std::lgamma(a_alpha) + std::lgamma(b_alpha) - std::lgamma(a_alpha + b_alpha);
  double la = (a_alpha - 1.0) * std::log(alpha) + (b_alpha - 1.0) * std::log1p(-alpha) - lb;
  double ll = a_lambda * std::log(b_lambda) + (a_lambda - 1.0) * std::log(lambda) - b_lambda * lambda -
              std::lgamma(a_lambda);
  return la + ll;
}

Chain pmmh_run(const Graph& target, const ModelConfig& proto, const Priors& priors,
               const PmmhOptions& opts) {
  if (opts.iterations < 1) throw std::invalid_argument("pmmh_run: need at least one iteration");
  if (opts.init_alpha <= 0.0 || opts.init_alpha >= 1.0 || opts.init_lambda <= 0.0)
    throw std::invalid_argument("pmmh_run: initial point must be interior");

  auto bridge_at = [&](double alpha, double lambda, std::uint64_t bseed) {
    BridgeConfig cfg;
    cfg.model = proto;
    cfg.model.alpha = alpha;
    cfg.model.law = WalkLengthLaw::poisson_plus(lambda);
    cfg.particles = opts.particles;
    cfg.seed = bseed;
    return run_bridge(target, cfg);
  };
  // Transformed-scale log target: likelihood estimate, prior, and the
  // Jacobian of (logit alpha, log lambda).
  auto log_target = [&](double alpha, double lambda, double loglik) {
    return loglik + priors.log_density(alpha, lambda) + std::log(alpha) + std::log1p(-alpha) +
           std::log(lambda);
  };

  double alpha = opts.init_alpha;
  double lambda = opts.init_lambda;
  BridgeResult br = bridge_at(alpha, lambda, mix_seed(opts.seed, 1, 0));
  double loglik = br.loglik;
  std::vector<int> cur_hist = br.selected;

  Chain chain;
  chain.samples.reserve(opts.iterations);
  double ls_alpha = std::log(opts.step_alpha);
  double ls_lambda = std::log(opts.step_lambda);
  int accepts = 0;

  for (int it = 1; it <= opts.iterations; ++it) {
    Rng rng = Rng::substream(opts.seed, 6, static_cast<std::uint64_t>(it));
    double e1 = logit(alpha) + std::exp(ls_alpha) * rng.normal();
    double e2 = std::log(lambda) + std::exp(ls_lambda) * rng.normal();
    double alpha_p = expit(e1);
    double lambda_p = std::exp(e2);

    bool accepted = false;
    if (alpha_p > 0.0 && alpha_p < 1.0 && lambda_p > 0.0 && std::isfinite(lambda_p)) {
      BridgeResult prop = bridge_at(alpha_p, lambda_p, mix_seed(opts.seed, 2, it));
      double log_ratio = log_target(alpha_p, lambda_p, prop.loglik) - log_target(alpha, lambda, loglik);
      if (std::log(rng.uniform_pos()) < log_ratio) {
        accepted = true;
        alpha = alpha_p;
        lambda = lambda_p;
        loglik = prop.loglik;
        cur_hist = prop.histories[rng.uniform_int(static_cast<int>(prop.histories.size()))];
      }
    }
    if (accepted) ++accepts;
    if (opts.adapt) {
      double gain = std::pow(static_cast<double>(it), -0.6);
      double delta = gain * ((accepted ? 1.0 : 0.0) - 0.25);
      ls_alpha += delta;
      ls_lambda += delta;
    }
    chain.samples.push_back({alpha, lambda, loglik, accepted});
    if (opts.store_histories) chain.histories.push_back(cur_hist);
  }
  chain.last_history = cur_hist;
  chain.acceptance_rate = static_cast<double>(accepts) / opts.iterations;
  return chain;
}

int latent_sweep(const Graph& target, const ModelConfig& proto, const Priors& priors,
                 LatentState& state, const SweepOptions& sweep, Rng& rng) {
  const int T = target.edge_count();
  if (static_cast<int>(state.order.size()) != T || static_cast<int>(state.b.size()) != T ||
      static_cast<int>(state.k.size()) != T)
    throw std::invalid_argument("latent_sweep: state arrays must match the edge count");
  if (T < 2) return 0;

  const bool simple = proto.mode == GraphMode::Simple;
  const int n = target.vertex_count();
  int kmax_base = std::max(4, sweep.kmax_multiplier * graph_diameter(target));
  int warnings = 0;

  double sum_b = 0.0;
  double sum_km1 = 0.0;
  for (int s = 1; s < T; ++s) {
    sum_b += state.b[s];
    sum_km1 += state.k[s] - 1;
  }

  PrefixTracker prefix(n);
  prefix.insert(target, state.order[0]);

  std::vector<double> nbw;
  std::vector<double> post;
  for (int s = 1; s < T; ++s) {
    const int e = state.order[s];
    auto [a, b] = target.edge(e);
    const double chi = priors.a_alpha + sum_b - state.b[s];
    const double omega = priors.b_alpha + (T - 2) - (sum_b - state.b[s]);
    const double kappa = priors.a_lambda + sum_km1 - (state.k[s] - 1);
    const double tau = priors.b_lambda + (T - 2);
    const double pbar = 1.0 / (1.0 + tau);

    const bool new_vertex = !prefix.present[a] || !prefix.present[b];
    int new_b = state.b[s];
    int new_k = state.k[s];

    if (new_vertex && !simple) {
      new_b = 1;
      new_k = 1 + static_cast<int>(rng.neg_binomial(kappa, pbar));
    } else {
      const int anchor = new_vertex ? (prefix.present[a] ? a : b) : a;
      int kmax = kmax_base;
      bool extended = false;
      for (;;) {
        double tail = nb_length_weights(kappa, pbar, kmax, nbw);
        if (tail > sweep.tail_tolerance && !extended) {
          kmax *= 2;
          extended = true;
          ++warnings;
          continue;
        }
        CsrGraph csr = CsrGraph::from_graph(prefix.state);
        Eigen::MatrixXd rows = power_rows(csr, anchor, kmax);
        post.assign(kmax, 0.0);
        double total = 0.0;
        if (new_vertex) {
          // Walk returned to the closed neighborhood of the anchor.
          for (int l = 1; l <= kmax; ++l) {
            double c = rows(l - 1, anchor);
            for (int w : prefix.state.neighbors(anchor)) c += rows(l - 1, w);
            post[l - 1] = nbw[l - 1] * c;
            total += post[l - 1];
          }
          double p1 = chi;
          double p0 = omega * total;
          new_b = rng.bernoulli(p1 / (p1 + p0)) ? 1 : 0;
          if (new_b == 1) {
            new_k = 1 + static_cast<int>(rng.neg_binomial(kappa, pbar));
            break;
          }
          if (total > 0.0) {
            new_k = 1 + rng.categorical(post);
            break;
          }
        } else if (a == b) {
          for (int l = 1; l <= kmax; ++l) {
            post[l - 1] = nbw[l - 1] * prefix.select_weight(proto.selection, a) * rows(l - 1, a);
            total += post[l - 1];
          }
          if (total > 0.0) {
            new_b = 0;
            new_k = 1 + rng.categorical(post);
            break;
          }
        } else {
          const double mu_a = prefix.select_weight(proto.selection, a);
          const double mu_b = prefix.select_weight(proto.selection, b);
          const double ratio = static_cast<double>(prefix.state.degree(a)) / prefix.state.degree(b);
          for (int l = 1; l <= kmax; ++l) {
            double fwd = rows(l - 1, b);
            post[l - 1] = nbw[l - 1] * (mu_a * fwd + mu_b * fwd * ratio);
            total += post[l - 1];
          }
          if (total > 0.0) {
            new_b = 0;
            new_k = 1 + rng.categorical(post);
            break;
          }
        }
        // Zero mass at this cap: the walk cannot reach the endpoint yet.
        // Any connected prefix is covered once the cap passes the vertex
        // count, so one jump there settles it.
        if (kmax >= n + 1) throw std::runtime_error("latent_sweep: zero walk mass at maximal cap");
        kmax = std::max(2 * kmax, n + 1);
        ++warnings;
      }
    }

    sum_b += new_b - state.b[s];
    sum_km1 += new_k - state.k[s];
    state.b[s] = new_b;
    state.k[s] = new_k;
    prefix.insert(target, e);
  }
  return warnings;
}

StepLawFn collapsed_step_laws(const LatentState& state, const Priors& priors, int T,
                              double trunc_tol) {
  double sum_b = 0.0;
  double sum_km1 = 0.0;
  for (int s = 1; s < T; ++s) {
    sum_b += state.b[s];
    sum_km1 += state.k[s] - 1;
  }
  std::vector<int> bcopy = state.b;
  std::vector<int> kcopy = state.k;
  return [=](int t) {
    const int s = t - 1;
    const double chi = priors.a_alpha + sum_b - bcopy[s];
    const double omega = priors.b_alpha + (T - 2) - (sum_b - bcopy[s]);
    const double kappa = priors.a_lambda + sum_km1 - (kcopy[s] - 1);
    const double tau = priors.b_lambda + (T - 2);
    StepLaw sl;
    sl.alpha = chi / (chi + omega);
    sl.walk = truncate_law(WalkLengthLaw::neg_bin_plus(kappa, 1.0 / (1.0 + tau)), trunc_tol);
    return sl;
  };
}

Chain pg_run(const Graph& target, const ModelConfig& proto, const Priors& priors, const PgOptions& opts) {
  const int T = target.edge_count();
  if (T < 2) throw std::invalid_argument("pg_run: need at least two edges");
  if (opts.particles < 2) throw std::invalid_argument("pg_run: need at least two particles");
  if (opts.iterations < 1) throw std::invalid_argument("pg_run: need at least one iteration");
  constexpr double kTruncTol = 1e-10;

  // Sequential prior-predictive draw of the step variables.
  LatentState state;
  state.b.assign(T, 1);
  state.k.assign(T, -1);
  {
    Rng rng = Rng::substream(opts.seed, 7);
    double sb = 0.0, skm1 = 0.0;
    for (int s = 1; s < T; ++s) {
      const int m = s - 1;  // steps already drawn
      const double pb = (priors.a_alpha + sb) / (priors.a_alpha + priors.b_alpha + m);
      const double kappa = priors.a_lambda + skm1;
      const double tau = priors.b_lambda + m;
      state.b[s] = rng.bernoulli(pb) ? 1 : 0;
      state.k[s] = 1 + static_cast<int>(rng.neg_binomial(kappa, 1.0 / (1.0 + tau)));
      sb += state.b[s];
      skm1 += state.k[s] - 1;
    }
  }
  // Initial order from an unconditional run under the collapsed laws.
  state.order = run_bridge_with_laws(target, proto, collapsed_step_laws(state, priors, T, kTruncTol),
                                     opts.particles, false, mix_seed(opts.seed, 8, 0), nullptr)
                    .selected;

  Chain chain;
  chain.samples.reserve(opts.iterations);
  for (int j = 1; j <= opts.iterations; ++j) {
    Rng sweep_rng = Rng::substream(opts.seed, 9, static_cast<std::uint64_t>(j));
    chain.tail_warnings += latent_sweep(target, proto, priors, state, opts.sweep, sweep_rng);

    BridgeResult br =
        run_bridge_with_laws(target, proto, collapsed_step_laws(state, priors, T, kTruncTol), opts.particles,
                             false, mix_seed(opts.seed, 10, j), &state.order);
    state.order = br.selected;

    double sb = 0.0, skm1 = 0.0;
    for (int s = 1; s < T; ++s) {
      sb += state.b[s];
      skm1 += state.k[s] - 1;
    }
    Rng par_rng = Rng::substream(opts.seed, 11, static_cast<std::uint64_t>(j));
    double alpha = par_rng.beta(priors.a_alpha + sb, priors.b_alpha + (T - 1) - sb);
    double rate = priors.b_lambda + (T - 1);
    double lambda = par_rng.gamma(priors.a_lambda + skm1, 1.0 / rate);

    chain.samples.push_back({alpha, lambda, br.loglik, true});
    if (opts.store_histories) chain.histories.push_back(state.order);
  }
  chain.last_history = state.order;
  chain.acceptance_rate = 1.0;
  return chain;
}

ChainSummary chain_summary(const std::vector<double>& values, int max_lag) {
  const int n = static_cast<int>(values.size());
  if (n < 1) throw std::invalid_argument("chain_summary: empty chain");
  ChainSummary out;

  double mean = 0.0;
  for (double x : values) mean += x;
  mean /= n;
  out.mean = mean;

  auto gamma_at = [&](int lag) {
    double g = 0.0;
    for (int i = 0; i + lag < n; ++i) g += (values[i] - mean) * (values[i + lag] - mean);
    return g / n;
  };
  const double g0 = gamma_at(0);
  out.sd = n > 1 ? std::sqrt(std::max(0.0, g0 * n / (n - 1.0))) : 0.0;

  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  auto quantile = [&](double p) {
    if (n == 1) return sorted[0];
    double pos = p * (n - 1);
    int lo = static_cast<int>(pos);
    int hi = std::min(lo + 1, n - 1);
    double frac = pos - lo;
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
  };
  out.q025 = quantile(0.025);
  out.median = quantile(0.5);
  out.q975 = quantile(0.975);

  if (g0 <= 0.0 || !(g0 > 1e-300)) {
    out.degenerate = true;
    out.acf.assign(std::min(max_lag, n - 1) + 1, 0.0);
    if (!out.acf.empty()) out.acf[0] = 1.0;
    out.ess = 0.0;
    return out;
  }

  const int lag_cap = std::min(max_lag, n - 1);
  out.acf.reserve(lag_cap + 1);
  for (int lag = 0; lag <= lag_cap; ++lag) out.acf.push_back(gamma_at(lag) / g0);

  // Initial monotone sequence estimator over paired autocorrelations.
  double tau = 0.0;
  double prev = std::numeric_limits<double>::infinity();
  for (int m = 0; 2 * m + 1 <= n - 1 && m < 5000; ++m) {
    double g = gamma_at(2 * m) / g0 + gamma_at(2 * m + 1) / g0;
    if (g <= 0.0) break;
    g = std::min(g, prev);
    tau += g;
    prev = g;
  }
  double iact = std::max(1.0, 2.0 * tau - 1.0);
  out.ess = n / iact;
  return out;
}

}  // namespace rwnet
