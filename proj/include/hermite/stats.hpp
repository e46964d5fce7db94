#pragma once

#include <optional>
#include <utility>
#include <vector>

namespace hermite {

struct SlopeFit {
  double slope;
  double standardError;
  bool operator==(const SlopeFit&) const = default;
};

// Ordinary least squares on (x, y) pairs. Needs >= 3 points with distinct x.
SlopeFit regress_scaling(const std::vector<std::pair<double, double>>& points);

// Sup distance between the two empirical distribution functions.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

struct Moments {
  double mean;
  double variance;  // unbiased
  std::optional<double> skewness;
  std::optional<double> excessKurtosis;
  bool operator==(const Moments&) const = default;
};

// Needs >= 2 samples. Skewness and kurtosis are the standardized central
// moments, absent when the sample has zero spread; kurtosis also needs >= 4.
Moments moment_report(const std::vector<double>& samples);

// Compensated (Neumaier) sum.
double stable_sum(const std::vector<double>& values);

}  // namespace hermite
