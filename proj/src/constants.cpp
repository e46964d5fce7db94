#include "hermite/constants.hpp"

#include <array>
#include <string>

#include "hermite/errors.hpp"

namespace hermite {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

double binomial(int n, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

bool is_three_quarters(double H) { return std::abs(H - 0.75) <= 1e-12; }

}  // namespace

HurstParams derive_params(double H, int q) {
  if (!(H > 0.5 && H < 1.0))
    throw ParameterDomainError("H must lie in (1/2, 1), got " + std::to_string(H));
  if (q < 1) throw ParameterDomainError("q must be >= 1, got " + std::to_string(q));
  HurstParams p;
  p.H = H;
  p.q = q;
  p.hPrime = 1.0 + (H - 1.0) / q;
  p.hSecond = 2.0 * p.hPrime - 1.0;
  return p;
}

double d_constant(const HurstParams& p) {
  const double a = a_constant(p.hPrime);
  return std::sqrt(p.H * (2.0 * p.H - 1.0)) / std::sqrt(factorial(p.q) * std::pow(a, p.q));
}

double c1_constant(const HurstParams& p) {
  const double h = p.hPrime;
  if (4.0 * h - 3.0 <= 0.0)
    throw RegimeError("Rosenblatt normalization undefined: 4H'-3 <= 0 (Gaussian regime)");
  const double d = d_constant(p);
  const double a = a_constant(h);
  const double qm = p.q - 1.0;
  const double f1 = (2.0 * h - 2.0) * qm + 1.0;
  const double f2 = (h - 1.0) * qm + 1.0;
  return 4.0 * std::pow(d, 4) * std::pow(a, 2 * p.q) /
         ((4.0 * h - 3.0) * (4.0 * h - 2.0) * f1 * f1 * f2 * f2);
}

double combinatorial_coefficient(int q, int k) {
  if (q < 1 || k < 0 || k > q - 1)
    throw ParameterDomainError("combinatorial coefficient needs 0 <= k <= q-1");
  const double b = binomial(q, k);
  return factorial(k) * b * b;
}

double z_constant(const HurstParams& p, int k) {
  if (k < 1 || k > p.q - 2) throw ParameterDomainError("z constant needs 1 <= k <= q-2");
  const double d = d_constant(p);
  const double hm = p.hPrime - 1.0;
  return d * d * std::pow(a_constant(p.hPrime), k) / (hm * k + 1.0) / (2.0 * hm + 1.0);
}

double squared_increment_series(double H, double* tailBound) {
  if (!(H < 0.75)) throw RegimeError("squared increment series diverges for H >= 3/4");
  constexpr int L = 64;
  double head = 0.0, comp = 0.0;
  for (int j = 1; j < L; ++j) {
    const double g = 2.0 * fgn_autocovariance(H, j);
    const double y = g * g - comp;
    const double t = head + y;
    comp = (t - head) - y;
    head = t;
  }
  // Euler-Maclaurin remainder from L on, applied termwise to the
  // long-lag expansion g(x)^2 = 4 sum C_m C_n x^{4H-2m-2n}.
  constexpr int M = 10;
  std::array<double, M + 1> coef{};
  coef[0] = 1.0;
  for (int m = 1; m <= M; ++m)
    coef[m] = coef[m - 1] * (2 * H - (2 * m - 2)) * (2 * H - (2 * m - 1)) / ((2 * m - 1) * (2 * m));
  constexpr std::array<double, 3> bern{1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0};
  const double x = L;
  double tail = 0.0, lastCorrection = 0.0;
  for (int m = 1; m <= M; ++m) {
    for (int n = 1; n <= M; ++n) {
      const double c = 4.0 * coef[m] * coef[n];
      const double pw = 4.0 * H - 2.0 * m - 2.0 * n;
      double term = -c * std::pow(x, pw + 1.0) / (pw + 1.0) + 0.5 * c * std::pow(x, pw);
      double fallingFactorial = pw;  // p (p-1) ... for odd derivatives
      double fact = 2.0;
      for (int r = 1; r <= 3; ++r) {
        const double deriv = c * fallingFactorial * std::pow(x, pw - (2 * r - 1));
        const double corr = -bern[r - 1] / fact * deriv;
        term += corr;
        if (r == 3) lastCorrection += std::abs(corr);
        fallingFactorial *= (pw - (2 * r - 1)) * (pw - 2 * r);
        fact *= (2 * r + 1) * (2 * r + 2);
      }
      tail += term;
    }
  }
  if (tailBound) *tailBound = lastCorrection + std::abs(coef[M]) * std::pow(x, 4.0 * H - 2.0 * M);
  return head + tail;
}

XConstants x_constants(const HurstParams& p) {
  const ConstantSet cs = constant_set(p);
  return XConstants{cs.x1, cs.x2, cs.x3};
}

ConstantSet constant_set(const HurstParams& p) {
  ConstantSet cs;
  cs.d = d_constant(p);
  cs.a = a_constant(p.hPrime);
  if (4.0 * p.hPrime - 3.0 > 0.0) cs.c1 = c1_constant(p);
  for (int k = 0; k <= p.q - 1; ++k) cs.comb[k] = combinatorial_coefficient(p.q, k);
  for (int k = 1; k <= p.q - 2; ++k) cs.z[k] = z_constant(p, k);

  const double H = p.H;
  const double base = std::pow(factorial(p.q), 2) * std::pow(cs.d, 4) * std::pow(cs.a, 2 * p.q);
  if (is_three_quarters(H)) {
    double sum = 0.0;
    for (int l = 1; l <= p.q - 1; ++l) {
      const double b = binomial(p.q, l);
      sum += cs.b3[l] = base * b * b * 2.0 * 0.5;
    }
    cs.x3 = sum + 9.0 / 16.0;
  } else if (H > 0.75) {
    const double integral = 1.0 / ((4.0 * H - 3.0) * (4.0 * H - 2.0));
    double sum = 0.0;
    for (int l = 1; l <= p.q - 1; ++l) {
      const double b = binomial(p.q, l);
      sum += cs.b1[l] = base * b * b * 2.0 * integral;
    }
    cs.x2 = sum + H * H * (2.0 * H - 1.0) / (4.0 * H - 3.0);
  } else {
    const double series = squared_increment_series(H);
    double sum = 0.0;
    for (int l = 1; l <= p.q - 1; ++l) {
      const double b = binomial(p.q, l);
      sum += cs.b2[l] = base * b * b * series;
    }
    cs.x1 = sum + 1.0 + 0.5 * series;
  }
  return cs;
}

double log_beta(double x, double y) {
  return std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y);
}

double kernel_constant(double hPrime) {
  if (!(hPrime > 0.5 && hPrime < 1.0)) throw ParameterDomainError("kernel needs H' in (1/2, 1)");
  return std::sqrt(a_constant(hPrime) * std::exp(-log_beta(2.0 - 2.0 * hPrime, hPrime - 0.5)));
}

double kernel_derivative(double hPrime, double t, double s) {
  if (!(s > 0.0) || !(s < t)) throw ParameterDomainError("kernel derivative needs 0 < s < t");
  return kernel_constant(hPrime) * std::pow(s / t, 0.5 - hPrime) * std::pow(t - s, hPrime - 1.5);
}

}  // namespace hermite
