#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace rwnet {

/// 64-bit mix used for seeding substreams; invertible, passes avalanche tests.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Deterministic RNG wrapper. All distribution code is hand rolled on top of
/// the raw engine so that sampled values are identical across standard library
/// implementations. Substreams derived from (seed, tags...) are independent
/// for distinct tag tuples, which keeps particle systems reproducible no
/// matter how the surrounding loops are ordered.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(splitmix64(seed ^ 0xabcdef0123456789ULL)) {}

  /// Child stream for a tagged subcomputation.
  template <typename... Tags>
  static Rng substream(std::uint64_t seed, Tags... tags) {
    std::uint64_t h = splitmix64(seed);
    ((h = splitmix64(h ^ static_cast<std::uint64_t>(tags))), ...);
    Rng r;
    r.engine_.seed(h);
    return r;
  }

  std::uint64_t raw() { return engine_(); }

  /// Uniform on [0,1) with 53-bit resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on (0,1), safe as a log() argument.
  double uniform_pos() {
    double u;
    do {
      u = uniform();
    } while (u <= 0.0);
    return u;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in {0, ..., n-1} by rejection (unbiased).
  std::int64_t uniform_int(std::int64_t n) {
    if (n <= 0) throw std::invalid_argument("uniform_int: n must be positive");
    const std::uint64_t un = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % un;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return static_cast<std::int64_t>(x % un);
  }

  bool bernoulli(double p) { return uniform() < p; }

  double normal() {
    // Box-Muller; one value per call keeps the stream layout simple.
    const double u1 = uniform_pos();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  double normal(double mean, double sd) { return mean + sd * normal(); }

  /// Gamma(shape, scale) via Marsaglia-Tsang, boosted for shape < 1.
  double gamma(double shape, double scale) {
    if (shape <= 0.0 || scale <= 0.0) throw std::invalid_argument("gamma: parameters must be positive");
    if (shape < 1.0) {
      const double u = uniform_pos();
      return gamma(shape + 1.0, scale) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform_pos();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v * scale;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v * scale;
    }
  }

  double beta(double a, double b) {
    const double x = gamma(a, 1.0);
    const double y = gamma(b, 1.0);
    return x / (x + y);
  }

  /// Poisson by inversion; large means are split into exact partial sums so
  /// the running product never underflows.
  std::int64_t poisson(double mean) {
    if (mean < 0.0) throw std::invalid_argument("poisson: mean must be nonnegative");
    if (mean == 0.0) return 0;
    if (mean > 30.0) {
      const int parts = static_cast<int>(std::ceil(mean / 30.0));
      const double part_mean = mean / parts;
      std::int64_t total = 0;
      for (int i = 0; i < parts; ++i) total += poisson(part_mean);
      return total;
    }
    const double limit = std::exp(-mean);
    std::int64_t k = 0;
    double prod = uniform_pos();
    while (prod > limit) {
      prod *= uniform_pos();
      ++k;
    }
    return k;
  }

  /// Negative binomial on {0,1,...} as a Gamma-Poisson mixture:
  /// pmf(k) = Gamma(k+r)/(Gamma(k+1)Gamma(r)) p^k (1-p)^r.
  std::int64_t neg_binomial(double r, double p) {
    if (r <= 0.0 || p <= 0.0 || p >= 1.0) throw std::invalid_argument("neg_binomial: need r > 0, 0 < p < 1");
    const double lam = gamma(r, p / (1.0 - p));
    return poisson(lam);
  }

  /// Index draw from unnormalized nonnegative weights.
  std::size_t categorical(const std::vector<double>& weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    if (!(total > 0.0)) throw std::invalid_argument("categorical: total weight must be positive");
    double u = uniform() * total;
    for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
      u -= weights[i];
      if (u < 0.0) return i;
    }
    return weights.size() - 1;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace rwnet
