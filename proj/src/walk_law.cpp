#include "rwnet/walk_law.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace rwnet {

WalkLengthLaw WalkLengthLaw::poisson_plus(double lambda) {
  if (lambda < 0.0) throw std::invalid_argument("poisson_plus: lambda must be nonnegative");
  WalkLengthLaw law;
  law.kind = Kind::PoissonPlus;
  law.lambda = lambda;
  return law;
}

WalkLengthLaw WalkLengthLaw::neg_bin_plus(double r, double p) {
  if (r <= 0.0 || p <= 0.0 || p >= 1.0) throw std::invalid_argument("neg_bin_plus: need r > 0 and 0 < p < 1");
  WalkLengthLaw law;
  law.kind = Kind::NegBinPlus;
  law.r = r;
  law.p = p;
  return law;
}

WalkLengthLaw WalkLengthLaw::fixed_length(int k) {
  if (k < 0) throw std::invalid_argument("fixed_length: k must be nonnegative");
  WalkLengthLaw law;
  law.kind = Kind::FixedLength;
  law.k = k;
  return law;
}

WalkLengthLaw WalkLengthLaw::limit_degenerate() {
  WalkLengthLaw law;
  law.kind = Kind::LimitDegenerate;
  return law;
}

double WalkLengthLaw::pgf(double z) const {
  switch (kind) {
    case Kind::PoissonPlus:
      return z * std::exp(lambda * (z - 1.0));
    case Kind::NegBinPlus:
      return z * std::pow((1.0 - p) / (1.0 - p * z), r);
    case Kind::FixedLength:
      return std::pow(z, k);
    case Kind::LimitDegenerate:
      return std::abs(z - 1.0) <= 1e-9 ? 1.0 : 0.0;
  }
  return 0.0;
}

double WalkLengthLaw::pmf_length(int len) const {
  if (len < 0) return 0.0;
  switch (kind) {
    case Kind::PoissonPlus: {
      if (len < 1) return 0.0;
      const int m = len - 1;
      if (lambda == 0.0) return m == 0 ? 1.0 : 0.0;
      return std::exp(-lambda + m * std::log(lambda) - std::lgamma(m + 1.0));
    }
    case Kind::NegBinPlus: {
      if (len < 1) return 0.0;
      const int m = len - 1;
      return std::exp(std::lgamma(m + r) - std::lgamma(m + 1.0) - std::lgamma(r) + m * std::log(p) +
                      r * std::log1p(-p));
    }
    case Kind::FixedLength:
      return len == k ? 1.0 : 0.0;
    case Kind::LimitDegenerate:
      return 0.0;
  }
  return 0.0;
}

double WalkLengthLaw::mean() const {
  switch (kind) {
    case Kind::PoissonPlus:
      return 1.0 + lambda;
    case Kind::NegBinPlus:
      return 1.0 + r * p / (1.0 - p);
    case Kind::FixedLength:
      return k;
    case Kind::LimitDegenerate:
      return std::numeric_limits<double>::infinity();
  }
  return 0.0;
}

int WalkLengthLaw::sample(Rng& rng) const {
  switch (kind) {
    case Kind::PoissonPlus:
      return 1 + static_cast<int>(rng.poisson(lambda));
    case Kind::NegBinPlus:
      return 1 + static_cast<int>(rng.neg_binomial(r, p));
    case Kind::FixedLength:
      return k;
    case Kind::LimitDegenerate:
      throw std::invalid_argument("sample: the degenerate limit law has no finite samples");
  }
  return 1;
}

std::string WalkLengthLaw::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::PoissonPlus:
      os << "poisson+:" << lambda;
      break;
    case Kind::NegBinPlus:
      os << "negbin+:" << r << "," << p;
      break;
    case Kind::FixedLength:
      os << "fixed:" << k;
      break;
    case Kind::LimitDegenerate:
      os << "limit";
      break;
  }
  return os.str();
}

TruncatedLaw truncate_law(const WalkLengthLaw& law, double tol, int cap) {
  if (law.kind == WalkLengthLaw::Kind::LimitDegenerate)
    throw std::invalid_argument("truncate_law: the degenerate limit law has no finite truncation");
  TruncatedLaw out;
  if (law.kind == WalkLengthLaw::Kind::FixedLength) {
    if (law.k == 0) {
      out.weight0 = 1.0;  // length 0: the walk stays put (identity kernel)
    } else {
      out.weights.assign(law.k, 0.0);
      out.weights[law.k - 1] = 1.0;
    }
    out.tail = 0.0;
    return out;
  }
  // Successive-ratio recurrences keep this free of per-length lgamma calls;
  // collapsed-parameter samplers rebuild truncations in their inner loop.
  double cum = 0.0;
  double w = law.pmf_length(1);
  for (int len = 1; len <= cap; ++len) {
    out.weights.push_back(w);
    cum += w;
    if (1.0 - cum <= tol) break;
    const int m = len;  // count index of the next length
    if (law.kind == WalkLengthLaw::Kind::PoissonPlus)
      w *= law.lambda / m;
    else
      w *= law.p * (m - 1.0 + law.r) / m;
  }
  out.tail = std::max(0.0, 1.0 - cum);
  return out;
}

}  // namespace rwnet
