#include <cmath>
#include <string>

#include "hermite/errors.hpp"
#include "hermite/quadrature_rules.hpp"
#include "hermite/simulator.hpp"

namespace hermite {

namespace {

// Integral over x in (0, X) of x^e (x + delta)^e (x + yhi)^{2h-1}, the kernel
// overlap shifted to start at the later cell. The first piece (0, delta)
// carries the endpoint singularity in a Jacobi weight; the rest is covered by
// geometrically growing Gauss-Legendre panels, each at least its own width
// away from both singular points.
double overlap_integral(double h, double yhi, double delta, int jacobiNodes, int legendreNodes) {
  const double e = h - 1.5;
  const double p = 2.0 * h - 1.0;
  const double X = 1.0 - yhi;
  const double first = std::min(delta, X);
  const auto& gj = gauss_jacobi01(jacobiNodes, e);
  double total = 0.0;
  for (int i = 0; i < gj.nodes.size(); ++i) {
    const double x = first * gj.nodes(i);
    total += gj.weights(i) * std::pow(x + delta, e) * std::pow(x + yhi, p);
  }
  total *= std::pow(first, e + 1.0);
  const auto& gl = gauss_legendre01(legendreNodes);
  for (double a = first; a < X;) {
    const double b = std::min(2.0 * a, X);
    const double w = b - a;
    double piece = 0.0;
    for (int i = 0; i < gl.nodes.size(); ++i) {
      const double x = a + w * gl.nodes(i);
      piece += gl.weights(i) * std::pow(x, e) * std::pow(x + delta, e) * std::pow(x + yhi, p);
    }
    total += w * piece;
    a = b;
  }
  return total;
}

}  // namespace

RosenblattQuadraticForm::RosenblattQuadraticForm(double hSecond, int G, double grading) {
  const HurstParams params = derive_params(hSecond, 2);
  if (G < 2 || G > maxGrid) throw ParameterDomainError("quadratic-form grid must lie in [2, 2048]");
  const double h = params.hPrime;
  const double c = kernel_constant(h);
  if (!(grading >= 1.0)) throw ParameterDomainError("cell grading exponent must be >= 1");
  const double scale = d_constant(params) * c * c;
  constexpr int nj = 10, nl = 8;

  // cell edges (k/G)^grading concentrate cells at the origin, where the
  // kernel blows up like (y1 y2)^{1/2-h}
  Eigen::VectorXd edges(G + 1);
  for (int k = 0; k <= G; ++k) edges(k) = std::pow(static_cast<double>(k) / G, grading);
  edges(G) = 1.0;
  widths_ = edges.tail(G) - edges.head(G);
  mids_ = 0.5 * (edges.tail(G) + edges.head(G));
  auto cell = [this](int i) { return mids_(i); };

  // refinement check on the pairs closest to the singularity and on the
  // widest pair
  for (auto [i, j] : {std::pair{0, 1}, {G / 2 - 1, G / 2}, {G - 2, G - 1}, {0, G - 1}}) {
    const double coarse = overlap_integral(h, cell(j), cell(j) - cell(i), nj, nl);
    const double fine = overlap_integral(h, cell(j), cell(j) - cell(i), 2 * nj, 2 * nl);
    if (std::abs(coarse - fine) > 1e-9 * std::abs(fine))
      throw AccuracyError("kernel overlap quadrature did not converge at cells " + std::to_string(i) + "," +
                          std::to_string(j));
  }

  A_ = Eigen::MatrixXd::Zero(G, G);
  for (int j = 1; j < G; ++j) {
    const double yj = cell(j);
    for (int i = 0; i < j; ++i) {
      const double yi = cell(i);
      const double v = scale * std::pow(yi * yj, 0.5 - h) * overlap_integral(h, yj, yj - yi, nj, nl);
      A_(i, j) = v;
      A_(j, i) = v;
    }
  }
}

double RosenblattQuadraticForm::sample(const RandomStream& stream) const {
  NormalSource normals(stream);
  Eigen::VectorXd xi(A_.rows());
  normals.fill(xi);
  xi.array() *= widths_.array().sqrt();
  return xi.dot(A_ * xi);
}

double RosenblattQuadraticForm::exact_variance() const {
  const Eigen::MatrixXd w = widths_.asDiagonal() * A_.cwiseAbs2() * widths_.asDiagonal();
  return 2.0 * w.sum();
}

double rosenblatt_quadratic_form_oracle(double hSecond, int gridSize, const RandomStream& stream) {
  return RosenblattQuadraticForm(hSecond, gridSize).sample(stream);
}

}  // namespace hermite
