#pragma once

#include <limits>
#include <string>
#include <vector>

#include "rwnet/rng.hpp"

namespace rwnet {

/// Distribution of the random-walk length used when a step connects two
/// vertices through a walk. Lengths are supported on {1, 2, ...}:
/// PoissonPlus(lambda) is 1 + Poisson(lambda), NegBinPlus(r, p) is
/// 1 + NegBin(r, p), FixedLength(k) is the point mass at k, and
/// LimitDegenerate is the formal infinite-length limit whose kernel forgets
/// the start vertex (degree-biased restart).
struct WalkLengthLaw {
  enum class Kind { PoissonPlus, NegBinPlus, FixedLength, LimitDegenerate };

  Kind kind = Kind::PoissonPlus;
  double lambda = 1.0;  // PoissonPlus
  double r = 1.0;       // NegBinPlus
  double p = 0.5;       // NegBinPlus
  int k = 1;            // FixedLength

  static WalkLengthLaw poisson_plus(double lambda);
  static WalkLengthLaw neg_bin_plus(double r, double p);
  static WalkLengthLaw fixed_length(int k);
  static WalkLengthLaw limit_degenerate();

  /// Probability generating function E[z^K] on z in [-1, 1]. For the
  /// degenerate limit this is the indicator of z = 1 (within eigensolver
  /// tolerance 1e-9), the pointwise limit of the other families.
  double pgf(double z) const;

  /// P(K = len) for len >= 1; zero for every finite length under the
  /// degenerate limit.
  double pmf_length(int len) const;

  /// Mean length; infinity for the degenerate limit.
  double mean() const;

  int sample(Rng& rng) const;

  std::string describe() const;
};

/// pmf over lengths 1..weights.size() with the stated analytic tail mass.
/// weight0 carries mass on length 0 (identity kernel); it is nonzero only for
/// FixedLength(0). Truncation stops once the tail drops below `tol` or the
/// hard cap is hit.
struct TruncatedLaw {
  std::vector<double> weights;
  double weight0 = 0.0;
  double tail = 0.0;
};

/// Finite support approximation for series evaluation of walk kernels.
/// Errors out for LimitDegenerate (no finite support exists).
TruncatedLaw truncate_law(const WalkLengthLaw& law, double tol = 1e-12, int cap = 100000);

}  // namespace rwnet
