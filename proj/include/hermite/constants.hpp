#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>

namespace hermite {

struct HurstParams {
  double H;
  int q;
  double hPrime;   // Hurst index of the driving fGn
  double hSecond;  // parameter of the limiting Rosenblatt law
};

// Throws ParameterDomainError unless 1/2 < H < 1 and q >= 1.
HurstParams derive_params(double H, int q);

// a(H') = H'(2H'-1)
inline double a_constant(double hPrime) { return hPrime * (2.0 * hPrime - 1.0); }

double d_constant(const HurstParams& p);
double c1_constant(const HurstParams& p);
double combinatorial_coefficient(int q, int k);
double z_constant(const HurstParams& p, int k);

struct XConstants {
  std::optional<double> x1;  // H < 3/4
  std::optional<double> x2;  // H > 3/4
  std::optional<double> x3;  // H = 3/4
};
XConstants x_constants(const HurstParams& p);

// Sum over j >= 1 of (2 j^{2H} - (j+1)^{2H} - (j-1)^{2H})^2, finite for H < 3/4.
// tailBound receives an upper bound on the neglected remainder.
double squared_increment_series(double H, double* tailBound = nullptr);

struct ConstantSet {
  double d;
  double a;
  std::optional<double> c1;
  std::map<int, double> comb;  // k -> c_{2q-2k}
  std::map<int, double> z;     // 1 <= k <= q-2
  std::optional<double> x1, x2, x3;
  std::map<int, double> b1, b2, b3;  // 1 <= k <= q-1, present only in their regime
};
ConstantSet constant_set(const HurstParams& p);

double log_beta(double x, double y);

// c_{H'} such that the integral of dK(u,.)dK(v,.) equals a(H')|u-v|^{2H'-2}.
double kernel_constant(double hPrime);

// d/dt K^{H'}(t, s) for 0 < s < t.
double kernel_derivative(double hPrime, double t, double s);

template <typename Scalar>
Scalar hermite_polynomial(int q, Scalar x) {
  if (q <= 0) return Scalar(1);
  Scalar prev = Scalar(1), cur = x;
  for (int k = 1; k < q; ++k) {
    Scalar next = x * cur - Scalar(k) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

// Autocovariance of unit-variance fractional Gaussian noise.
template <typename Scalar>
Scalar fgn_autocovariance(Scalar H, std::int64_t lag) {
  using std::abs;
  using std::pow;
  if (lag < 0) lag = -lag;
  if (lag == 0) return Scalar(1);
  const Scalar twoH = Scalar(2) * H;
  const Scalar k = Scalar(lag);
  if (lag < 4)
    return (pow(k + 1, twoH) + pow(k - 1, twoH) - Scalar(2) * pow(k, twoH)) / Scalar(2);
  // Even part of the binomial expansion of (1 +- 1/k)^{2H}; the closed form
  // cancels catastrophically at long lags.
  const Scalar inv2 = Scalar(1) / (k * k);
  const Scalar eps = std::numeric_limits<Scalar>::epsilon();
  Scalar coef = Scalar(1), power = pow(k, twoH), sum = Scalar(0);
  for (int m = 1; m < 200; ++m) {
    coef *= (twoH - Scalar(2 * m - 2)) * (twoH - Scalar(2 * m - 1)) / Scalar((2 * m - 1) * (2 * m));
    power *= inv2;
    const Scalar term = coef * power;
    sum += term;
    if (abs(term) <= eps * abs(sum)) break;
  }
  return sum;
}

template <typename Scalar>
Scalar fbm_covariance(Scalar H, Scalar s, Scalar t) {
  using std::abs;
  using std::pow;
  const Scalar twoH = Scalar(2) * H;
  return (pow(abs(s), twoH) + pow(abs(t), twoH) - pow(abs(t - s), twoH)) / Scalar(2);
}

}  // namespace hermite
