#include <cmath>
#include <vector>

#include "doctest.h"
#include "hermite/constants.hpp"
#include "hermite/errors.hpp"
#include "hermite/simulator.hpp"
#include "hermite/stats.hpp"

using namespace hermite;
using doctest::Approx;

namespace {

struct MeanSe {
  double mean, se;
};

MeanSe mean_se(const std::vector<double>& x) {
  const auto m = moment_report(x);
  return {m.mean, std::sqrt(m.variance / x.size())};
}

}  // namespace

TEST_CASE("sigma_n closed cases and brute force") {
  for (std::int64_t n : {1, 10, 1000}) {
    CHECK(sigma_n(1, 0.7, n) == Approx(std::pow(double(n), 0.7)).epsilon(1e-12));
    CHECK(sigma_n(2, 0.5, n) == Approx(std::sqrt(2.0 * n)).epsilon(1e-14));
  }
  const std::int64_t n = 1024;
  long double brute = 0.0L;
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t j = 0; j < n; ++j) {
      const double r = fgn_autocovariance(0.9, i - j);
      brute += static_cast<long double>(r) * r;
    }
  CHECK(sigma_n(2, 0.9, n) == Approx(std::sqrt(2.0 * static_cast<double>(brute))).epsilon(1e-12));
  CHECK_THROWS_AS(sigma_n(0, 0.9, 4), ParameterDomainError);
}

TEST_CASE("path shape, determinism and the resource ceiling") {
  const auto p = derive_params(0.8, 2);
  const auto a = simulate_path(p, 32, 16, RandomStream{1, 1});
  CHECK(a.values.size() == 33);
  CHECK(a.values(0) == 0.0);
  CHECK(a.N == 32);
  CHECK(a.oversampling == 16);
  CHECK(a.sigmaN == Approx(sigma_n(2, 0.9, 512)));
  CHECK(a.provenance == RandomStream{1, 1});
  const auto b = simulate_path(p, 32, 16, RandomStream{1, 1});
  CHECK(a.values == b.values);
  CHECK_THROWS_AS(simulate_path(p, 1 << 12, 1 << 13, RandomStream{}), ResourceError);
  CHECK_THROWS_AS(simulate_path(p, 64, 64, RandomStream{}, 1000), ResourceError);
  CHECK_THROWS_AS(simulate_path(p, 0, 64, RandomStream{}), ParameterDomainError);
}

TEST_CASE("coarser observation grids are subsamples of the same aggregation") {
  const auto p = derive_params(0.7, 3);
  const auto coarse = simulate_path(p, 64, 8, RandomStream{3, 9});
  const auto fine = simulate_path(p, 128, 4, RandomStream{3, 9});
  for (int j = 0; j <= 64; ++j) CHECK(coarse.values(j) == fine.values(2 * j));
}

TEST_CASE("q = 1 is the normalized fgn partial sum") {
  const auto p = derive_params(0.7, 1);
  const RandomStream s{4, 4};
  const auto path = simulate_path(p, 256, 1, s);
  const auto x = generate_fgn_circulant(0.7, 256, s).values;
  double run = 0.0;
  for (int j = 1; j <= 256; ++j) {
    run += x(j - 1);
    CHECK(path.values(j) == Approx(run / std::pow(256.0, 0.7)).epsilon(1e-13));
  }
}

TEST_CASE("second-order path moments by Monte Carlo") {
  const auto p = derive_params(0.8, 2);
  const PathSimulator sim(p, 128, 64);
  constexpr int reps = 2000;
  std::vector<double> end(reps), half(reps), cross(reps);
  std::vector<std::vector<double>> incVar(3, std::vector<double>(reps)), incCube(3, std::vector<double>(reps));
  for (int r = 0; r < reps; ++r) {
    const auto path = sim.simulate(RandomStream{17, std::uint64_t(r)});
    end[r] = path.values(128) * path.values(128);
    half[r] = path.values(64) * path.values(64);
    cross[r] = path.values(32) * path.values(96);
    for (int k = 0; k < 3; ++k) {
      const double d = path.values(48 * k + 16) - path.values(48 * k);
      incVar[k][r] = d * d;
      incCube[k][r] = d * d * d;
    }
  }
  auto e = mean_se(end);
  CHECK(std::abs(e.mean - 1.0) < 3.0 * e.se);
  auto h = mean_se(half);
  CHECK(h.mean == Approx(std::pow(0.5, 1.6)).epsilon(0.05));
  auto c = mean_se(cross);
  CHECK(std::abs(c.mean - fbm_covariance(0.8, 0.25, 0.75)) < 3.0 * c.se);

  // stationary increments: span 1/8 at three disjoint positions
  for (int k = 1; k < 3; ++k) {
    std::vector<double> dv(reps), dc(reps);
    for (int r = 0; r < reps; ++r) {
      dv[r] = incVar[k][r] - incVar[0][r];
      dc[r] = incCube[k][r] - incCube[0][r];
    }
    auto v = mean_se(dv);
    CHECK(std::abs(v.mean) < 3.0 * v.se);
    auto t = mean_se(dc);
    CHECK(std::abs(t.mean) < 3.0 * t.se);
  }
}

TEST_CASE("rosenblatt marginal moments") {
  const auto z = simulate_rosenblatt_marginal(0.8, 2000, RandomStream{41, 0});
  CHECK(z.size() == 2000);
  const auto m = moment_report(z);
  CHECK(std::abs(m.mean) < 3.0 * std::sqrt(m.variance / z.size()));
  std::vector<double> sq(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) sq[i] = z[i] * z[i];
  const auto s = mean_se(sq);
  CHECK(std::abs(s.mean - 1.0) < 3.0 * s.se);
  CHECK(*m.skewness > 0.0);

  const auto again = simulate_rosenblatt_marginal(0.8, 8, RandomStream{41, 0}, defaultRosenblattOversampling, 1);
  for (int i = 0; i < 8; ++i) CHECK(again[i] == z[i]);
}

TEST_CASE("quadratic-form variance converges in the grid size") {
  double previous = 0.0;
  for (int G : {256, 512, 1024}) {
    const RosenblattQuadraticForm form(0.8, G);
    CHECK(form.widths().sum() == Approx(1.0).epsilon(1e-14));
    const double var = form.exact_variance();
    CHECK(var < 1.0);
    CHECK(var > previous);
    previous = var;
    if (G == 1024) CHECK(var == Approx(1.0).epsilon(0.10));
  }
  // the uniform grid converges too slowly because of the kernel blow-up at
  // the origin
  const RosenblattQuadraticForm uniform(0.8, 256, 1.0);
  CHECK(uniform.exact_variance() == Approx(2.0 * uniform.kernel().squaredNorm() / (256.0 * 256.0)));
  CHECK(uniform.exact_variance() < 0.7);
  CHECK_THROWS_AS(RosenblattQuadraticForm(0.8, 4096), ParameterDomainError);
  CHECK_THROWS_AS(RosenblattQuadraticForm(0.8, 64, 0.5), ParameterDomainError);
  CHECK_THROWS_AS(RosenblattQuadraticForm(0.5, 64), ParameterDomainError);
}

TEST_CASE("the two Rosenblatt constructions agree") {
  const RosenblattQuadraticForm form(0.8, 1024);
  constexpr int reps = 2000;
  std::vector<double> q(reps);
  for (int r = 0; r < reps; ++r) q[r] = form.sample(RandomStream{51, std::uint64_t(r)});
  const auto m = moment_report(q);
  CHECK(std::abs(m.mean) < 3.0 * std::sqrt(m.variance / reps));
  CHECK(m.variance == Approx(1.0).epsilon(0.10));
  CHECK(*m.skewness > 0.0);
  const auto agg = simulate_rosenblatt_marginal(0.8, reps, RandomStream{52, 0});
  CHECK(ks_two_sample(q, agg) <= 0.08);
}
