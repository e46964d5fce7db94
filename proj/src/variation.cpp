#include "hermite/variation.hpp"

#include <bit>
#include <cmath>
#include <limits>

#include "hermite/errors.hpp"

namespace hermite {

namespace {

// Neumaier accumulator
struct Accumulator {
  double sum = 0.0, comp = 0.0;
  void add(double v) {
    const double t = sum + v;
    comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

std::int64_t grid_size(const Eigen::VectorXd& values) {
  if (values.size() < 2) throw ParameterDomainError("a path needs at least two grid values");
  return values.size() - 1;
}

}  // namespace

Eigen::VectorXd increments(const Eigen::VectorXd& values) {
  const std::int64_t N = grid_size(values);
  return values.tail(N) - values.head(N);
}

double centered_quadratic_variation(const Eigen::VectorXd& values, double H) {
  const std::int64_t N = grid_size(values);
  const double scale = std::pow(static_cast<double>(N), 2.0 * H);
  Accumulator acc;
  for (std::int64_t i = 0; i < N; ++i) {
    const double d = values(i + 1) - values(i);
    acc.add(d * d * scale - 1.0);
  }
  return acc.value() / static_cast<double>(N);
}

double centered_quadratic_variation(const HermitePath& path, double H) {
  return centered_quadratic_variation(path.values, H);
}

double empirical_mean_square(const Eigen::VectorXd& values) {
  const std::int64_t N = grid_size(values);
  Accumulator acc;
  for (std::int64_t i = 0; i < N; ++i) {
    const double d = values(i + 1) - values(i);
    acc.add(d * d);
  }
  return acc.value() / static_cast<double>(N);
}

double empirical_mean_square(const HermitePath& path) { return empirical_mean_square(path.values); }

double estimate_hurst(double sN, std::int64_t N) {
  if (N < 2) throw ParameterDomainError("estimating H needs N >= 2");
  if (!(sN > 0.0)) throw DegeneratePathError("empirical mean square is zero: the path has no increments");
  return -std::log(sN) / (2.0 * std::log(static_cast<double>(N)));
}

double estimate_hurst(const HermitePath& path) {
  return estimate_hurst(empirical_mean_square(path), grid_size(path.values));
}

double normalized_limit_statistic(double vN, const HurstParams& params, std::int64_t N) {
  const double c1 = c1_constant(params);
  const double c2 = combinatorial_coefficient(params.q, params.q - 1);
  return std::pow(static_cast<double>(N), 2.0 - 2.0 * params.hPrime) * vN / (std::sqrt(c1) * c2);
}

double plugin_normalized_error(double hHat, double H, const HurstParams& params, std::int64_t N) {
  if (N < 2) throw ParameterDomainError("normalized error needs N >= 2");
  const double hHatPrime = 1.0 + (hHat - 1.0) / params.q;
  const double logN = std::log(static_cast<double>(N));
  return 2.0 * std::pow(static_cast<double>(N), 2.0 - 2.0 * hHatPrime) * (H - hHat) * logN;
}

VariationReport variation_report(const Eigen::VectorXd& values, const HurstParams& params) {
  VariationReport r;
  r.N = grid_size(values);
  r.trueH = params.H;
  r.vN = centered_quadratic_variation(values, params.H);
  r.sN = empirical_mean_square(values);
  r.hHat = estimate_hurst(r.sN, r.N);
  if (4.0 * params.hPrime - 3.0 > 0.0) r.normalizedVN = normalized_limit_statistic(r.vN, params, r.N);
  r.normalizedError = plugin_normalized_error(r.hHat, params.H, params, r.N);
  return r;
}

VariationReport variation_report(const HermitePath& path) { return variation_report(path.values, path.params); }

std::int64_t ulp_distance(double a, double b) {
  if (a == b) return 0;
  if (!std::isfinite(a) || !std::isfinite(b)) return std::numeric_limits<std::int64_t>::max();
  // map the doubles onto a monotone integer line
  auto key = [](double x) {
    const auto bits = std::bit_cast<std::int64_t>(x);
    return bits < 0 ? std::numeric_limits<std::int64_t>::min() - bits : bits;
  };
  const std::int64_t ka = key(a), kb = key(b);
  return ka > kb ? ka - kb : kb - ka;
}

}  // namespace hermite
