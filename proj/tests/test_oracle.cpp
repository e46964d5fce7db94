#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "hermite/constants.hpp"
#include "hermite/errors.hpp"
#include "hermite/oracle.hpp"
#include "hermite/quadrature_rules.hpp"
#include "hermite/singular_quadrature.hpp"

using namespace hermite;
using doctest::Approx;

namespace {

double dirichlet(double a, double b, double c, double d) {
  return std::exp(std::lgamma(a + 1) + std::lgamma(b + 1) + std::lgamma(c + 1) + std::lgamma(d + 1) -
                  std::lgamma(a + b + c + d + 4));
}

// int int |y - y' + lag|^e over the unit square
double cross_mass(double e, double lag) {
  const auto f = [&](double x) { return std::pow(std::abs(x), e + 2.0); };
  return (f(lag + 1) - 2 * f(lag) + f(lag - 1)) / ((e + 1) * (e + 2));
}

// Nested rule: split each pair at its diagonal and put the gap on a
// Gauss-Jacobi weight. Only valid for lag >= 2 where the cross factors are
// smooth.
double nested_far_lag(double e1, double e2, double lag, int n) {
  const auto& S = gauss_jacobi01(n, e1, 1.0);
  const auto& W = gauss_legendre01(n);
  std::vector<std::array<double, 3>> pts;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const double s = S.nodes(a), z = (1 - s) * W.nodes(b), w = S.weights(a) * W.weights(b);
      pts.push_back({z + s, z, w});
      pts.push_back({z, z + s, w});
    }
  double total = 0.0;
  for (const auto& p : pts)
    for (const auto& q : pts)
      total += p[2] * q[2] * std::pow(p[0] - q[0] + lag, e2) * std::pow(p[1] - q[1] + lag, e2);
  return total;
}

double monte_carlo_cell(double e1, double e2, double lag, int samples, double* se) {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double y = u(rng), z = u(rng), y2 = u(rng), z2 = u(rng);
    const double v = std::pow(std::abs(y - z), e1) * std::pow(std::abs(y2 - z2), e1) *
                     std::pow(std::abs(y - y2 + lag), e2) * std::pow(std::abs(z - z2 + lag), e2);
    s += v;
    s2 += v * v;
  }
  const double mean = s / samples;
  *se = std::sqrt((s2 / samples - mean * mean) / samples);
  return mean;
}

}  // namespace

TEST_CASE("tetrahedralization covers the polytope") {
  const auto hs = [](double a, double b, double c, double d) { return Halfspace{Eigen::Vector3d(a, b, c), d}; };
  std::vector<Halfspace> cube{hs(1, 0, 0, 1), hs(0, 1, 0, 1), hs(0, 0, 1, 1),
                              hs(-1, 0, 0, 0), hs(0, -1, 0, 0), hs(0, 0, -1, 0)};
  double vol = 0.0;
  for (const auto& t : tetrahedralize(cube)) vol += tetrahedron_volume(t);
  CHECK(vol == Approx(1.0).epsilon(1e-13));

  std::vector<Halfspace> pyramid{hs(1, 1, 0, 1), hs(1, 0, 1, 1), hs(-1, 0, 0, 0), hs(0, -1, 0, 0), hs(0, 0, -1, 0)};
  vol = 0.0;
  for (const auto& t : tetrahedralize(pyramid)) vol += tetrahedron_volume(t);
  CHECK(vol == Approx(1.0 / 3.0).epsilon(1e-13));

  std::vector<Halfspace> empty{hs(1, 0, 0, -1), hs(-1, 0, 0, 0), hs(0, 1, 0, 1), hs(0, 0, 1, 1)};
  CHECK(tetrahedralize(empty).empty());
}

TEST_CASE("singular tetrahedron rule integrates Dirichlet monomials") {
  const Tetrahedron simplex{Eigen::Vector3d(0, 0, 0), Eigen::Vector3d(1, 0, 0), Eigen::Vector3d(0, 1, 0),
                            Eigen::Vector3d(0, 0, 1)};
  const auto f = [](double a, double b, double c, double o, double e) {
    return PowerFactor{Eigen::Vector3d(a, b, c), o, e};
  };
  for (double e : {-0.7, -0.3, 0.5}) {
    CHECK(integrate_power_product(simplex, {f(1, 0, 0, 0, e)}, 12) == Approx(dirichlet(e, 0, 0, 0)).epsilon(1e-12));
    CHECK(integrate_power_product(simplex, {f(1, 0, 0, 0, e), f(0, 1, 0, 0, -0.5), f(-1, -1, -1, 1, e)}, 12) ==
          Approx(dirichlet(e, -0.5, 0, e)).epsilon(1e-12));
    // vanishing along an edge: (x1 + x2)^e has density u (1 - u) in u = x1 + x2
    const double edge = std::exp(std::lgamma(e + 2) + std::lgamma(2.0) - std::lgamma(e + 4));
    CHECK(integrate_power_product(simplex, {f(1, 1, 0, 0, e)}, 12) == Approx(edge).epsilon(1e-12));
  }
  // a reordered, stretched tetrahedron gives the same value scaled by volume
  const Tetrahedron moved{Eigen::Vector3d(0, 0, 2), Eigen::Vector3d(1, 0, 0), Eigen::Vector3d(0, 0, 0),
                          Eigen::Vector3d(0, 1, 0)};
  CHECK(integrate_power_product(moved, {f(0, 0, 0.5, 0, -0.4)}, 12) ==
        Approx(2.0 * dirichlet(-0.4, 0, 0, 0)).epsilon(1e-12));
}

TEST_CASE("unit cell integral reduces to closed forms") {
  for (std::int64_t lag : {0, 1, 2, 7, 300}) CHECK(unit_cell_integral(0, 0, lag) == Approx(1.0).epsilon(1e-13));
  for (double e : {-0.6, -0.4, 0.3}) {
    const double m = 2.0 / ((e + 1) * (e + 2));
    for (std::int64_t lag : {0, 1, 3}) CHECK(unit_cell_integral(e, 0, lag) == Approx(m * m).epsilon(1e-12));
    for (std::int64_t lag : {0, 1, 2, 5, 64}) {
      const double c = cross_mass(e, double(lag));
      CHECK(unit_cell_integral(0, e, lag) == Approx(c * c).epsilon(1e-10));
    }
  }
}

TEST_CASE("far lags agree with an independent nested rule") {
  for (auto [e1, e2] : {std::pair{-0.4, -0.4}, std::pair{-0.6, -0.2}, std::pair{-0.2, -0.8}})
    for (std::int64_t lag : {2, 3, 10}) {
      const double ref = nested_far_lag(e1, e2, double(lag), 24);
      CHECK(unit_cell_integral(e1, e2, lag) == Approx(ref).epsilon(1e-10));
    }
}

TEST_CASE("near lags agree with Monte Carlo and self-converge") {
  for (auto [e1, e2] : {std::pair{-0.4, -0.4}, std::pair{-0.2, -0.4}})
    for (std::int64_t lag : {0, 1}) {
      double se = 0.0;
      const double mc = monte_carlo_cell(e1, e2, double(lag), 2000000, &se);
      const double v = unit_cell_integral(e1, e2, lag);
      CHECK(std::abs(v - mc) < 4.0 * se);
      const double coarse = unit_cell_integral(e1, e2, lag, {8, true});
      const double fine = unit_cell_integral(e1, e2, lag, {32, true});
      CHECK(std::abs(v - fine) < 1e-8 * fine);
      CHECK(std::abs(coarse - fine) < 1e-4 * fine);
    }
}

TEST_CASE("splitting is what makes the near lags converge") {
  const QuadratureSpec plain{16, false};
  const double split = unit_cell_integral(-0.4, -0.4, 0);
  const double tensor = unit_cell_integral(-0.4, -0.4, 0, plain);
  CHECK(std::abs(tensor - split) > 1e-4 * split);
  CHECK_THROWS_AS(contraction_inner_product(derive_params(0.8, 2), 1, 0, plain), AccuracyError);
}

TEST_CASE("contraction inner product") {
  const auto p = derive_params(0.8, 2);
  const double v0 = contraction_inner_product(p, 1, 0);
  CHECK(v0 > 0.0);
  CHECK(std::isfinite(v0));
  const double v5 = contraction_inner_product(p, 1, 5);
  const double v5fine = contraction_inner_product(p, 1, 5, {32, true});
  CHECK(std::abs(v5 - v5fine) < 1e-6 * v5fine);
  for (int k : {0, 1}) {
    const double ratio = contraction_inner_product(p, k, 1000) / contraction_asymptote(p, k, 1000);
    CHECK(ratio == Approx(1.0).epsilon(1e-5));
  }
  const auto p3 = derive_params(0.7, 3);
  for (int k : {0, 1, 2})
    for (std::int64_t lag : {0, 1, 2, 40}) CHECK(contraction_inner_product(p3, k, lag) > 0.0);

  CHECK_THROWS_AS(contraction_inner_product(p, 2, 0), ParameterDomainError);
  CHECK_THROWS_AS(contraction_inner_product(p, -1, 0), ParameterDomainError);
  CHECK_THROWS_AS(contraction_inner_product(p, 1, -1), ParameterDomainError);
  CHECK_THROWS_AS(contraction_inner_product(p, 1, 3, {3, true}), ParameterDomainError);
}

TEST_CASE("q = 1 reduces to the fbm quadratic variation variance") {
  const double H = 0.8;
  const auto p = derive_params(H, 1);
  for (std::int64_t N : {1, 16, 100, 256}) {
    double brute = 0.0;
    for (std::int64_t i = 0; i < N; ++i)
      for (std::int64_t j = 0; j < N; ++j) {
        const double r = fgn_autocovariance(H, i - j < 0 ? j - i : i - j);
        brute += r * r;
      }
    brute *= 2.0 / double(N * N);
    CHECK(expected_T2_squared(p, N) == Approx(brute).epsilon(1e-9));
  }
}

TEST_CASE("second moment of T2 approaches its asymptote") {
  const auto p = derive_params(0.8, 2);
  const double c1 = c1_constant(p);
  const double alpha = 2 * p.hPrime - 2;
  const auto ratio = [&](std::int64_t N) { return expected_T2_squared(p, N) / (c1 * std::pow(double(N), 2 * alpha)); };
  const double r64 = ratio(64), r512 = ratio(512);
  CHECK(r512 >= 0.8);
  CHECK(r512 <= 1.2);
  CHECK(std::abs(r512 - 1) < std::abs(r64 - 1));
  CHECK(chaos_term_asymptote(p, 1, 512) == Approx(c1 * std::pow(512.0, 2 * alpha)).epsilon(1e-12));
  CHECK_THROWS_AS(expected_T2_squared(p, 1025), ParameterDomainError);
}

TEST_CASE("higher chaos bounds are dominated by T2") {
  const auto p = derive_params(0.7, 3);
  for (int k : {0, 1}) {
    double prev = 1e300;
    for (std::int64_t N : {64, 256, 1024}) {
      const double r = expected_T2q2k_squared_bound(p, k, N) / expected_T2_squared(p, N);
      CHECK(r > 0.0);
      CHECK(r < prev);
      prev = r;
    }
  }
  const auto p2 = derive_params(0.8, 2);
  std::vector<double> scaled;
  for (std::int64_t N : {16, 64, 256, 1024})
    scaled.push_back(expected_T2q2k_squared_bound(p2, 0, N) * std::pow(double(N), 4 - 4 * p2.H));
  for (double s : scaled) CHECK(s == Approx(scaled.back()).epsilon(0.25));
  CHECK(expected_T2q2k_squared_bound(p2, 0, 1024) / chaos_term_asymptote(p2, 0, 1024) == Approx(1.0).epsilon(0.1));
}
