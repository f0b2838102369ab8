#pragma once

#include <vector>

#include "rwnet/graph.hpp"

namespace rwnet {

/// Branch flags recovered from an ordered multigraph: flag[s] = 1 iff edge s
/// touches a vertex absent from edges 0..s-1 (the seed edge is 1). Under the
/// multigraph dynamics this equals the latent new-vertex indicator. Errors on
/// simple-mode graphs, where collisions break that equivalence.
std::vector<int> detect_b_flags(const Graph& g);

/// New-vertex rate (N_T - 2) / (T - 1); needs at least two edges.
double estimate_alpha(const Graph& g);

struct LambdaFitOptions {
  Selection selection = Selection::SizeBiased;
  /// Self-loop insertions carry their own walk probability mass; excluding
  /// them drops those steps from the objective entirely.
  bool include_self_loops = true;
  /// 0 picks 4x the diameter of the final graph's skeleton.
  double lambda_max = 0.0;
  int grid_points = 32;
  double tol = 1e-4;
};

/// Walk-step log likelihood of the mean walk-length parameter, profiled over
/// walk lengths once so that repeated evaluations cost O(T L). Operates on an
/// ordered multigraph whose edge order is the growth history.
class LambdaObjective {
 public:
  LambdaObjective(const Graph& g, const LambdaFitOptions& opts);

  double eval(double lambda) const;
  int walk_steps() const { return static_cast<int>(profiles_.size()); }
  int max_length() const { return max_length_; }

 private:
  std::vector<std::vector<double>> profiles_;  // per walk step: mass by length
  int max_length_ = 0;
};

/// Log likelihood of lambda for the observed insertion order; one-off
/// convenience over LambdaObjective.
double lambda_loglik(const Graph& g, double lambda, const LambdaFitOptions& opts = {});

struct LambdaEstimate {
  double lambda = 0.0;
  double loglik = 0.0;
  int walk_steps = 0;
  double lambda_max = 0.0;
};

/// Maximizes the walk-step likelihood by a grid pre-scan plus golden-section
/// refinement. Errors when no step has both endpoints pre-existing (the
/// parameter is unidentifiable without walk steps).
LambdaEstimate estimate_lambda(const Graph& g, const LambdaFitOptions& opts = {});

}  // namespace rwnet
