#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "rwnet/generative.hpp"
#include "rwnet/graph.hpp"
#include "rwnet/walk_law.hpp"

namespace rwnet {

/// Branch probability and walk-length pmf in force while one edge is placed.
/// Fixed-parameter bridges use the same law at every step; collapsed-
/// parameter samplers substitute per-step predictive values.
struct StepLaw {
  double alpha = 0.5;
  TruncatedLaw walk;
};

/// Per-step law lookup; t is the 1-based index of the edge being placed
/// (2..T, where T also covers the forced final insertion).
using StepLawFn = std::function<StepLaw(int)>;

struct BridgeConfig {
  ModelConfig model;
  int particles = 100;
  bool stratified = false;  // plain runs only; conditional runs resample multinomially
  std::uint64_t seed = 0;
};

struct BridgeResult {
  /// Complete insertion orders resampled from the final particle weights.
  std::vector<std::vector<int>> histories;
  /// One order drawn from the final weights (the conditional-run output).
  std::vector<int> selected;
  /// Log of the positive unbiased likelihood estimate.
  double loglik = 0.0;
  std::vector<double> log_increments;
  /// Ancestor indices per intermediate step, for pinning diagnostics.
  std::vector<std::vector<int>> ancestor_trace;
};

/// Sequential Monte Carlo over edge-insertion orders of `target`, proposing
/// only completable extensions and weighting by the truncated proposal mass.
BridgeResult run_bridge(const Graph& target, const BridgeConfig& cfg);

/// Conditional variant: the reference order survives in slot 0 with ancestor
/// 0 at every step; all other structure matches run_bridge. particles >= 2.
BridgeResult run_conditional_bridge(const Graph& target, const BridgeConfig& cfg,
                                    const std::vector<int>& reference);

/// Fully general core: per-step laws via `laws`, optional reference for the
/// conditional kernel. Selection and graph mode come from `proto`; its alpha
/// and law fields are ignored.
BridgeResult run_bridge_with_laws(const Graph& target, const ModelConfig& proto, const StepLawFn& laws,
                                  int particles, bool stratified, std::uint64_t seed,
                                  const std::vector<int>* reference = nullptr);

/// Log likelihood estimate alone.
double estimate_bridge_loglik(const Graph& target, const BridgeConfig& cfg);

/// Exhaustive enumeration of completable insertion orders with their exact
/// log probabilities (uniform first edge, model transitions after). Only for
/// small graphs; errors above max_edges.
struct ExactPosterior {
  std::vector<std::vector<int>> orders;
  std::vector<double> log_prob;    // joint, including the 1/T first-edge factor
  double log_marginal = 0.0;
  std::vector<double> posterior;   // normalized over orders
};

ExactPosterior exact_posterior(const Graph& target, const ModelConfig& model, int max_edges = 8);

/// One history per line, comma-separated edge indices.
void write_histories(std::ostream& out, const std::vector<std::vector<int>>& histories);

}  // namespace rwnet
