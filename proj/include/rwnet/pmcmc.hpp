#pragma once

#include <cstdint>
#include <vector>

#include "rwnet/bridge.hpp"
#include "rwnet/generative.hpp"
#include "rwnet/graph.hpp"

namespace rwnet {

/// Beta(a_alpha, b_alpha) on the attachment probability, Gamma(a_lambda,
/// rate b_lambda) on the walk-length mean.
struct Priors {
  double a_alpha = 1.0;
  double b_alpha = 1.0;
  double a_lambda = 1.0;
  double b_lambda = 0.25;

  double log_density(double alpha, double lambda) const;
};

struct ChainSample {
  double alpha = 0.0;
  double lambda = 0.0;
  double loglik = 0.0;
  bool accepted = false;
};

struct Chain {
  std::vector<ChainSample> samples;
  double acceptance_rate = 0.0;
  /// One stored insertion order per iteration when requested; otherwise only
  /// the last one survives.
  std::vector<std::vector<int>> histories;
  std::vector<int> last_history;
  int tail_warnings = 0;  // walk-length truncation extensions during sweeps
};

struct PmmhOptions {
  int iterations = 1000;
  int particles = 50;
  double step_alpha = 0.25;   // random-walk scale on logit(alpha)
  double step_lambda = 0.25;  // random-walk scale on log(lambda)
  bool adapt = false;         // Robbins-Monro toward 0.25 acceptance
  double init_alpha = 0.5;
  double init_lambda = 1.0;
  bool store_histories = false;
  std::uint64_t seed = 0;
};

/// Random-walk Metropolis on (logit alpha, log lambda) with the bridge
/// likelihood estimate in the acceptance ratio. `proto` fixes selection and
/// graph mode.
Chain pmmh_run(const Graph& target, const ModelConfig& proto, const Priors& priors,
               const PmmhOptions& opts);

/// Latent step variables attached to an insertion order: branch flags and
/// walk lengths, both indexed like the order (entry 0 is the seed edge and
/// holds b = 1, k = -1).
struct LatentState {
  std::vector<int> order;
  std::vector<int> b;
  std::vector<int> k;
};

struct SweepOptions {
  int kmax_multiplier = 4;     // walk-length cap as a multiple of the diameter
  double tail_tolerance = 1e-6;
};

/// One full-conditional pass over b and k for a fixed order, collapsing the
/// model parameters under the conjugate priors. Returns the number of cap
/// extensions forced by heavy predictive tails.
int latent_sweep(const Graph& target, const ModelConfig& proto, const Priors& priors,
                 LatentState& state, const SweepOptions& sweep, Rng& rng);

/// Per-step bridge proposal laws with the model parameters integrated out
/// against the conjugate priors: step t sees the leave-one-out counts of every
/// other step's branch flag and walk length. This is the proposal the
/// conditional bridge inside pg_run runs under.
StepLawFn collapsed_step_laws(const LatentState& state, const Priors& priors, int T,
                              double trunc_tol = 1e-10);

struct PgOptions {
  int iterations = 500;
  int particles = 100;
  bool store_histories = false;
  std::uint64_t seed = 0;
  SweepOptions sweep;
};

/// Particle Gibbs: alternates the latent sweep, a conditional bridge with
/// per-step collapsed laws, and conjugate parameter draws.
Chain pg_run(const Graph& target, const ModelConfig& proto, const Priors& priors,
             const PgOptions& opts);

struct ChainSummary {
  double mean = 0.0;
  double sd = 0.0;
  double q025 = 0.0;
  double median = 0.0;
  double q975 = 0.0;
  std::vector<double> acf;  // lags 0..max_lag
  double ess = 0.0;         // initial monotone sequence estimator
  bool degenerate = false;  // no variance in the chain
};

ChainSummary chain_summary(const std::vector<double>& values, int max_lag = 50);

}  // namespace rwnet
