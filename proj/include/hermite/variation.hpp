#pragma once

#include <cstdint>
#include <optional>

#include <Eigen/Core>

#include "hermite/constants.hpp"
#include "hermite/simulator.hpp"

namespace hermite {

struct VariationReport {
  std::int64_t N = 0;
  double vN = 0.0;
  double sN = 0.0;
  double hHat = 0.0;
  std::optional<double> normalizedVN;  // absent when c_{1,H} is undefined
  double normalizedError = 0.0;
  std::optional<double> trueH;
  bool operator==(const VariationReport&) const = default;
};

// Increments of grid values Z(0), Z(1/N), ..., Z(1).
Eigen::VectorXd increments(const Eigen::VectorXd& values);

// (1/N) sum (dZ^2 N^{2H} - 1), compensated.
double centered_quadratic_variation(const Eigen::VectorXd& values, double H);
double centered_quadratic_variation(const HermitePath& path, double H);

// (1/N) sum dZ^2, compensated.
double empirical_mean_square(const Eigen::VectorXd& values);
double empirical_mean_square(const HermitePath& path);

// -log S_N / (2 log N); throws DegeneratePathError when S_N = 0.
double estimate_hurst(double sN, std::int64_t N);
double estimate_hurst(const HermitePath& path);

// c_{1,H}^{-1/2} N^{2-2H'} c_2^{-1} V_N; RegimeError when c_{1,H} is undefined.
double normalized_limit_statistic(double vN, const HurstParams& params, std::int64_t N);

// 2 N^{2-2H^'} (H - H^) log N with H^' = 1 + (H^ - 1)/q.
double plugin_normalized_error(double hHat, double H, const HurstParams& params, std::int64_t N);

// Full report for a path with known parameters (trueH = params.H).
VariationReport variation_report(const Eigen::VectorXd& values, const HurstParams& params);
VariationReport variation_report(const HermitePath& path);

// Distance in units in the last place between two finite doubles.
std::int64_t ulp_distance(double a, double b);

}  // namespace hermite
