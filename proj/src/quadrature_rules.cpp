#include "hermite/quadrature_rules.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include <Eigen/Eigenvalues>

#include "hermite/errors.hpp"

namespace hermite {

QuadratureRule gauss_jacobi(int n, double alpha, double beta) {
  if (n < 1) throw ParameterDomainError("quadrature rule needs at least one node");
  if (!(alpha > -1.0) || !(beta > -1.0)) throw ParameterDomainError("Jacobi exponents must exceed -1");
  const double ab = alpha + beta;
  Eigen::VectorXd diag(n), sub(std::max(n - 1, 1));
  diag(0) = (beta - alpha) / (ab + 2.0);
  for (int k = 1; k < n; ++k) {
    const double s = 2.0 * k + ab;
    diag(k) = (beta * beta - alpha * alpha) / (s * (s + 2.0));
  }
  for (int k = 1; k < n; ++k) {
    const double s = 2.0 * k + ab;
    sub(k - 1) = std::sqrt(4.0 * k * (k + alpha) * (k + beta) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0)));
  }
  const double logMu0 = (ab + 1.0) * std::log(2.0) + std::lgamma(alpha + 1.0) + std::lgamma(beta + 1.0) -
                        std::lgamma(ab + 2.0);
  QuadratureRule rule;
  if (n == 1) {
    rule.nodes = diag;
    rule.weights = Eigen::VectorXd::Constant(1, std::exp(logMu0));
    return rule;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub.head(n - 1), Eigen::ComputeEigenvectors);
  rule.nodes = solver.eigenvalues();
  rule.weights = std::exp(logMu0) * solver.eigenvectors().row(0).transpose().array().square();
  return rule;
}

const QuadratureRule& gauss_jacobi01(int n, double p, double r) {
  static std::mutex mutex;
  static std::map<std::tuple<int, double, double>, QuadratureRule> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_tuple(n, p, r);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  QuadratureRule rule = gauss_jacobi(n, r, p);
  rule.nodes = (rule.nodes.array() + 1.0) * 0.5;
  rule.weights *= std::pow(0.5, p + r + 1.0);
  return cache.emplace(key, std::move(rule)).first->second;
}

const QuadratureRule& gauss_jacobi01(int n, double p) { return gauss_jacobi01(n, p, 0.0); }

const QuadratureRule& gauss_legendre01(int n) { return gauss_jacobi01(n, 0.0, 0.0); }

}  // namespace hermite
