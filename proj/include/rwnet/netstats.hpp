#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <vector>

#include "rwnet/graph.hpp"
#include "rwnet/pmcmc.hpp"

namespace rwnet {

enum class StatKind { Degree, SharedPartners, PathLength };

/// Key used in PathLength vectors for vertex pairs with no connecting path.
inline constexpr int kUnreachableKey = std::numeric_limits<int>::max();

/// Sparse normalized histogram over integer values.
struct StatVector {
  StatKind kind = StatKind::Degree;
  std::map<int, double> values;
};

struct FitStatistics {
  StatVector degree;           // fraction of vertices per degree
  StatVector shared_partners;  // fraction of edges per common-neighbor count
  StatVector path_length;      // fraction of vertex pairs per distance
};

/// All three comparison statistics of a simple graph. Multigraph-mode input
/// is an error; take the simple skeleton first.
FitStatistics compute_fit_statistics(const Graph& g);

/// Half the L1 distance between the two histograms after renormalizing each
/// to total mass one. The kinds must match.
double tv_distance(const StatVector& a, const StatVector& b);

/// Power-law exponent of the stationary degree distribution as a function of
/// the attachment probability.
double rho_of_alpha(double alpha);

/// Stationary degree pmf with exponent rho, at degree d >= 1.
double yule_simon_pmf(int d, double rho);

/// k-th moment of the asymptotically scaled degree of the j-th arriving
/// vertex, j >= 2, for uniform vertex selection.
double scaled_degree_moment(int j, int k, double alpha);

/// Gauss hypergeometric function by power series; requires |z| < 1 or
/// convergence at z = 1 (c - a - b > 0).
double hyp2f1(double a, double b, double c, double z);

enum class PpdModel { RwUniform, RwSizeBiased, Acl, Er };

struct PpdOptions {
  PpdModel model = PpdModel::RwUniform;
  int samples = 50;
  std::uint64_t seed = 0;
};

struct PpdResult {
  std::vector<double> tv_degree;
  std::vector<double> tv_shared;
  std::vector<double> tv_path;
  double mean_tv_degree = 0.0, sd_tv_degree = 0.0;
  double mean_tv_shared = 0.0, sd_tv_shared = 0.0;
  double mean_tv_path = 0.0, sd_tv_path = 0.0;
};

/// Posterior predictive check: repeatedly draw parameters from the chain,
/// simulate a graph of the same size as `data`, and record the statistic
/// distances. The Er reference ignores the chain and matches both the vertex
/// and edge counts of the data.
PpdResult ppd_run(const Graph& data, const std::vector<ChainSample>& chain, const PpdOptions& opts);

}  // namespace rwnet
