#include <cmath>
#include <limits>

#include "doctest.h"
#include "rwnet/rng.hpp"
#include "rwnet/walk_law.hpp"

using namespace rwnet;

namespace {

// pgf evaluated from the pmf by direct summation; independent of the closed
// forms inside the library.
double pgf_by_series(const WalkLengthLaw& law, double z, int terms = 4000) {
  double acc = 0.0;
  for (int len = 1; len <= terms; ++len) acc += law.pmf_length(len) * std::pow(z, len);
  return acc;
}

double mean_by_series(const WalkLengthLaw& law, int terms = 4000) {
  double acc = 0.0;
  for (int len = 1; len <= terms; ++len) acc += len * law.pmf_length(len);
  return acc;
}

}  // namespace

TEST_SUITE("walk_law") {

TEST_CASE("pmf normalization and pgf consistency") {
  const WalkLengthLaw laws[] = {WalkLengthLaw::poisson_plus(2.0), WalkLengthLaw::poisson_plus(0.0),
                                WalkLengthLaw::neg_bin_plus(2.0, 0.4),
                                WalkLengthLaw::neg_bin_plus(0.7, 0.75), WalkLengthLaw::fixed_length(3)};
  for (const WalkLengthLaw& law : laws) {
    double total = 0.0;
    for (int len = 1; len <= 4000; ++len) total += law.pmf_length(len);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
    for (double z : {1.0, 0.5, -0.5, -1.0})
      CHECK(law.pgf(z) == doctest::Approx(pgf_by_series(law, z)).epsilon(1e-10));
    CHECK(law.mean() == doctest::Approx(mean_by_series(law)).epsilon(1e-9));
  }
}

TEST_CASE("closed-form means") {
  CHECK(WalkLengthLaw::poisson_plus(2.0).mean() == doctest::Approx(3.0));
  CHECK(WalkLengthLaw::neg_bin_plus(2.0, 0.4).mean() == doctest::Approx(1.0 + 2.0 * 0.4 / 0.6));
  CHECK(WalkLengthLaw::fixed_length(4).mean() == doctest::Approx(4.0));
}

TEST_CASE("degenerate limit") {
  const WalkLengthLaw law = WalkLengthLaw::limit_degenerate();
  CHECK(law.pgf(1.0) == doctest::Approx(1.0));
  CHECK(law.pgf(1.0 - 5e-10) == doctest::Approx(1.0));  // eigensolver slack
  CHECK(law.pgf(0.5) == doctest::Approx(0.0));
  CHECK(law.pmf_length(1) == 0.0);
  CHECK(law.pmf_length(100) == 0.0);
  CHECK(std::isinf(law.mean()));
  Rng rng(1);
  CHECK_THROWS_AS(law.sample(rng), std::invalid_argument);
  CHECK_THROWS_AS(truncate_law(law), std::invalid_argument);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(WalkLengthLaw::poisson_plus(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(WalkLengthLaw::neg_bin_plus(0.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(WalkLengthLaw::neg_bin_plus(1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(WalkLengthLaw::fixed_length(-1), std::invalid_argument);
}

TEST_CASE("truncation accounting") {
  for (const WalkLengthLaw& law : {WalkLengthLaw::poisson_plus(3.0), WalkLengthLaw::neg_bin_plus(2.5, 0.6)}) {
    const TruncatedLaw t = truncate_law(law, 1e-10);
    CHECK(t.weight0 == 0.0);
    CHECK(t.tail <= 1e-10);
    CHECK(t.tail >= 0.0);
    double total = t.weight0 + t.tail;
    for (double w : t.weights) total += w;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    for (std::size_t i = 0; i < t.weights.size(); ++i)
      CHECK(t.weights[i] == doctest::Approx(law.pmf_length(static_cast<int>(i) + 1)).epsilon(1e-9));
  }
}

TEST_CASE("truncation of point masses") {
  const TruncatedLaw t3 = truncate_law(WalkLengthLaw::fixed_length(3));
  CHECK(t3.weights.size() == 3);
  CHECK(t3.weights[2] == doctest::Approx(1.0));
  CHECK(t3.weights[0] == doctest::Approx(0.0));
  CHECK(t3.tail == doctest::Approx(0.0));
  const TruncatedLaw t0 = truncate_law(WalkLengthLaw::fixed_length(0));
  CHECK(t0.weight0 == doctest::Approx(1.0));
  CHECK(t0.weights.empty());
  // PoissonPlus(0) is the point mass at length 1.
  const TruncatedLaw t1 = truncate_law(WalkLengthLaw::poisson_plus(0.0));
  CHECK(t1.weights.size() == 1);
  CHECK(t1.weights[0] == doctest::Approx(1.0));
}

TEST_CASE("sampling matches the pmf") {
  Rng rng(99);
  CHECK(WalkLengthLaw::fixed_length(3).sample(rng) == 3);
  CHECK(WalkLengthLaw::poisson_plus(0.0).sample(rng) == 1);
  for (const WalkLengthLaw& law : {WalkLengthLaw::poisson_plus(2.5), WalkLengthLaw::neg_bin_plus(2.0, 0.4)}) {
    const int n = 200000;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < n; ++i) {
      const int k = law.sample(rng);
      CHECK(k >= 1);
      sum += k;
      sq += static_cast<double>(k) * k;
    }
    const double mean = sum / n;
    const double sd = std::sqrt(sq / n - mean * mean);
    CHECK(std::abs(mean - law.mean()) < 5.0 * sd / std::sqrt(static_cast<double>(n)));
  }
}

TEST_CASE("describe names the family") {
  CHECK(WalkLengthLaw::poisson_plus(1.0).describe() != WalkLengthLaw::fixed_length(1).describe());
  CHECK_FALSE(WalkLengthLaw::limit_degenerate().describe().empty());
}

}  // TEST_SUITE
