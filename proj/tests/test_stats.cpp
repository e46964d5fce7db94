#include <cmath>
#include <vector>

#include "doctest.h"
#include "hermite/errors.hpp"
#include "hermite/random.hpp"
#include "hermite/stats.hpp"

using namespace hermite;
using doctest::Approx;

TEST_CASE("regression recovers an exact line") {
  std::vector<std::pair<double, double>> pts;
  for (double x : {1.0, 2.0, 3.5, 7.0}) pts.emplace_back(x, -0.4 * x + 1.0);
  const auto fit = regress_scaling(pts);
  CHECK(fit.slope == Approx(-0.4).epsilon(1e-14));
  CHECK(fit.standardError < 1e-14);
}

TEST_CASE("regression rejects degenerate abscissae") {
  CHECK_THROWS_AS(regress_scaling({{1.0, 2.0}, {1.0, 3.0}, {2.0, 1.0}}), RegressionError);
  CHECK_THROWS_AS(regress_scaling({{1.0, 2.0}, {2.0, 3.0}}), RegressionError);
  CHECK_THROWS_AS(regress_scaling({{1.0, 2.0}, {2.0, NAN}, {3.0, 1.0}}), RegressionError);
}

TEST_CASE("regression recovers a noisy slope within two standard errors") {
  int covered = 0;
  constexpr int trials = 200;
  for (int t = 0; t < trials; ++t) {
    NormalSource noise(RandomStream{2024, std::uint64_t(t)});
    std::vector<std::pair<double, double>> pts;
    for (int i = 0; i < 12; ++i) pts.emplace_back(i * 0.5, 0.7 * i * 0.5 - 2.0 + 0.3 * noise());
    const auto fit = regress_scaling(pts);
    covered += std::abs(fit.slope - 0.7) < 2.0 * fit.standardError;
  }
  // a t-interval with 10 degrees of freedom at +-2 se covers about 93%
  CHECK(covered > 0.85 * trials);
}

TEST_CASE("ks statistic edge cases") {
  const std::vector<double> a{0.3, -1.0, 2.0, 5.0};
  CHECK(ks_two_sample(a, a) == 0.0);
  CHECK(ks_two_sample(std::vector<double>(10, 0.0), std::vector<double>(7, 1.0)) == 1.0);
  CHECK(ks_two_sample({1.0, 2.0}, {1.5}) == Approx(0.5));
  CHECK_THROWS_AS(ks_two_sample({}, {1.0}), InsufficientSamplesError);
}

TEST_CASE("ks statistic of independent normal samples stays below the 5% critical value") {
  int below = 0;
  constexpr int seeds = 200;
  for (int s = 0; s < seeds; ++s) {
    NormalSource ga(RandomStream{std::uint64_t(s), 0}), gb(RandomStream{std::uint64_t(s), 1});
    std::vector<double> a(1000), b(1000);
    for (auto& v : a) v = ga();
    for (auto& v : b) v = gb();
    below += ks_two_sample(a, b) < 0.0607;
  }
  CHECK(below >= 0.95 * seeds - 6);  // binomial slack around 95%
}

TEST_CASE("moment report") {
  const auto c = moment_report({2.0, 2.0, 2.0, 2.0, 2.0});
  CHECK(c.mean == 2.0);
  CHECK(c.variance == 0.0);
  CHECK(!c.skewness);
  CHECK(!c.excessKurtosis);

  const auto sym = moment_report({-1.0, 1.0, -1.0, 1.0});
  CHECK(sym.mean == 0.0);
  CHECK(*sym.skewness == 0.0);
  CHECK(sym.variance == Approx(4.0 / 3.0));
  CHECK(*sym.excessKurtosis == Approx(-2.0));

  const auto two = moment_report({-1.0, 1.0});
  CHECK(two.mean == 0.0);
  CHECK(*two.skewness == 0.0);
  CHECK(two.variance == 2.0);
  CHECK(!two.excessKurtosis);
  CHECK(moment_report({1.0, 2.0, 3.0}).skewness.has_value());
  CHECK(!moment_report({1.0, 2.0, 3.0}).excessKurtosis);
  CHECK_THROWS_AS(moment_report({1.0}), InsufficientSamplesError);
  CHECK_THROWS_AS(moment_report({}), InsufficientSamplesError);

  NormalSource g(RandomStream{77, 0});
  std::vector<double> x(200000);
  for (auto& v : x) v = g();
  const auto m = moment_report(x);
  CHECK(std::abs(*m.excessKurtosis) < 3.0 * std::sqrt(24.0 / x.size()));
  CHECK(std::abs(*m.skewness) < 3.0 * std::sqrt(6.0 / x.size()));
  CHECK(std::abs(m.variance - 1.0) < 3.0 * std::sqrt(2.0 / x.size()));
}

TEST_CASE("normal source") {
  NormalSource a(RandomStream{1, 2}), b(RandomStream{1, 2});
  for (int i = 0; i < 10; ++i) CHECK(a() == b());
  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform();
    CHECK(u > 0.0);
    CHECK(u < 1.0);
  }
  CHECK(derive_stream_index(3, 4) == derive_stream_index(3, 4));
  CHECK(derive_stream_index(3, 4) != derive_stream_index(4, 3));
}

TEST_CASE("stable sum") {
  std::vector<double> v{1e16, 1.0, -1e16, 1.0};
  CHECK(stable_sum(v) == 2.0);
}
