#pragma once

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "rwnet/graph.hpp"
#include "rwnet/walk_law.hpp"

namespace rwnet {

/// Eigendecomposition of the normalized Laplacian I - D^{-1/2} A D^{-1/2}
/// together with the degree vector. eta is ascending; eta[0] = 0 for a
/// connected graph. Eigenvalues are clipped to [0, 2] within 1e-9 and it is
/// an error for one to fall further outside.
struct Spectrum {
  Eigen::VectorXd eta;
  Eigen::MatrixXd vectors;  // columns are orthonormal eigenvectors
  Eigen::VectorXd deg;
};

/// Dense symmetric eigensolve; requires every degree positive and the graph
/// connected.
Spectrum spectrum(const Graph& g);

/// Memoized by structural hash; states that coincide as graphs share one
/// decomposition. Single-threaded use.
std::shared_ptr<const Spectrum> spectrum_cached(const Graph& g);

/// End-vertex distribution of a random-length walk: row u gives
/// P(walk started at u ends at v) with the length drawn from `law`.
/// Computed spectrally; tiny negative round-off (magnitude <= 1e-10) is
/// clipped and rows renormalized, anything larger is an internal error.
Eigen::MatrixXd rw_prob_matrix(const Graph& g, const WalkLengthLaw& law);

/// Same matrix by direct series summation of step-matrix powers weighted by
/// the truncated pmf; serves as an independent oracle for rw_prob_matrix.
Eigen::MatrixXd series_prob_matrix(const Graph& g, const WalkLengthLaw& law, double tol = 1e-12);

/// k-step transition matrix (D^{-1} A)^k by repeated multiplication.
Eigen::MatrixXd fixed_step_matrix(const Graph& g, int k);

/// Stationary distribution of the simple random walk: deg(v) / volume.
Eigen::VectorXd degree_biased_distribution(const Graph& g);

struct MixingTimes {
  std::vector<int> steps;      // per start vertex; -1 when not reached by t_max
  double mean_finite = 0.0;    // mean over vertices that reached the threshold
  int finite_count = 0;
  int t_max = 0;
};

/// First t with || e_u (D^{-1}A)^t - pi ||_2 <= threshold, per start vertex.
/// Periodic (bipartite) graphs never reach it and get the -1 marker.
MixingTimes mixing_time_l2(const Graph& g, double threshold = 0.25, int t_max = 4096);

/// Flat adjacency for the hot walk loops. Half-edge targets; a self loop at v
/// stores v twice.
struct CsrGraph {
  int n = 0;
  std::vector<int> offset;
  std::vector<int> target;
  std::vector<double> inv_deg;  // 0 for isolated vertices

  static CsrGraph from_graph(const Graph& g);
};

/// Batched mixed-kernel rows: result row s equals
///   weight0 * e_{starts[s]} + sum_l weights[l-1] * e_{starts[s]} M^l
/// with M the one-step walk matrix. This is the workhorse for per-state walk
/// probabilities on large graphs; column-major updates keep it vectorized.
Eigen::MatrixXd mixed_rows(const CsrGraph& g, const std::vector<int>& starts, const TruncatedLaw& law);

/// Rows of every power up to L from one start: row l-1 equals e_start M^l.
Eigen::MatrixXd power_rows(const CsrGraph& g, int start, int L);

}  // namespace rwnet
