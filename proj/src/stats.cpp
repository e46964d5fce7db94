#include "hermite/stats.hpp"

#include <algorithm>
#include <cmath>

#include "hermite/errors.hpp"

namespace hermite {

double stable_sum(const std::vector<double>& values) {
  double sum = 0.0, comp = 0.0;
  for (double v : values) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  }
  return sum + comp;
}

SlopeFit regress_scaling(const std::vector<std::pair<double, double>>& points) {
  const std::size_t n = points.size();
  if (n < 3) throw RegressionError("scaling regression needs at least 3 points");
  std::vector<double> xs;
  for (const auto& [x, y] : points) {
    if (!std::isfinite(x) || !std::isfinite(y)) throw RegressionError("non-finite regression input");
    xs.push_back(x);
  }
  std::sort(xs.begin(), xs.end());
  if (std::adjacent_find(xs.begin(), xs.end()) != xs.end())
    throw RegressionError("regression abscissae must be distinct");

  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : points) {
    mx += x;
    my += y;
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : points) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double ssr = 0.0;
  for (const auto& [x, y] : points) {
    const double r = y - intercept - slope * x;
    ssr += r * r;
  }
  return SlopeFit{slope, std::sqrt(ssr / (n - 2) / sxx)};
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw InsufficientSamplesError("KS statistic needs nonempty samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = a.size(), nb = b.size();
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::abs(i / na - j / nb));
  }
  return d;
}

Moments moment_report(const std::vector<double>& samples) {
  const std::size_t n = samples.size();
  if (n < 2) throw InsufficientSamplesError("moment report needs at least 2 samples");
  const double mean = stable_sum(samples) / n;
  std::vector<double> d2(n), d3(n), d4(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = samples[i] - mean;
    d2[i] = d * d;
    d3[i] = d2[i] * d;
    d4[i] = d2[i] * d2[i];
  }
  const double s2 = stable_sum(d2);
  Moments m{mean, s2 / (n - 1), std::nullopt, std::nullopt};
  const double m2 = s2 / n;
  if (m2 > 0.0) {
    m.skewness = stable_sum(d3) / n / std::pow(m2, 1.5);
    if (n >= 4) m.excessKurtosis = stable_sum(d4) / n / (m2 * m2) - 3.0;
  }
  return m;
}

}  // namespace hermite
