#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

#include "hermite/errors.hpp"
#include "hermite/quadrature_rules.hpp"
#include "hermite/singular_quadrature.hpp"

namespace hermite {

double tetrahedron_volume(const Tetrahedron& t) {
  Eigen::Matrix3d m;
  m << t[1] - t[0], t[2] - t[0], t[3] - t[0];
  return std::abs(m.determinant()) / 6.0;
}

std::vector<Tetrahedron> tetrahedralize(const std::vector<Halfspace>& hs) {
  constexpr double tol = 1e-10;
  const std::size_t m = hs.size();
  std::vector<Eigen::Vector3d> verts;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      for (std::size_t k = j + 1; k < m; ++k) {
        Eigen::Matrix3d A;
        A << hs[i].normal.transpose(), hs[j].normal.transpose(), hs[k].normal.transpose();
        if (std::abs(A.determinant()) < 1e-12) continue;
        const Eigen::Vector3d x = A.lu().solve(Eigen::Vector3d(hs[i].bound, hs[j].bound, hs[k].bound));
        bool inside = true;
        for (const auto& h : hs) inside = inside && h.normal.dot(x) <= h.bound + tol;
        if (!inside) continue;
        const bool known =
            std::any_of(verts.begin(), verts.end(), [&](const Eigen::Vector3d& v) { return (v - x).norm() < tol; });
        if (!known) verts.push_back(x);
      }
  if (verts.size() < 4) return {};

  const Eigen::Vector3d& apex = verts[0];
  std::vector<std::vector<std::size_t>> seen;
  std::vector<Tetrahedron> tets;
  for (const auto& h : hs) {
    std::vector<std::size_t> on;
    for (std::size_t v = 0; v < verts.size(); ++v)
      if (std::abs(h.normal.dot(verts[v]) - h.bound) < tol * std::max(1.0, h.normal.norm())) on.push_back(v);
    if (on.size() < 3 || std::find(on.begin(), on.end(), 0) != on.end()) continue;
    if (std::find(seen.begin(), seen.end(), on) != seen.end()) continue;
    seen.push_back(on);
    // order the facet polygon by angle around its centroid
    Eigen::Vector3d c = Eigen::Vector3d::Zero();
    for (auto v : on) c += verts[v];
    c /= static_cast<double>(on.size());
    const Eigen::Vector3d n = h.normal.normalized();
    const Eigen::Vector3d u = (verts[on[0]] - c).normalized();
    const Eigen::Vector3d w = n.cross(u);
    std::sort(on.begin(), on.end(), [&](std::size_t a, std::size_t b) {
      const Eigen::Vector3d da = verts[a] - c, db = verts[b] - c;
      return std::atan2(da.dot(w), da.dot(u)) < std::atan2(db.dot(w), db.dot(u));
    });
    for (std::size_t i = 1; i + 1 < on.size(); ++i) {
      Tetrahedron t{apex, verts[on[0]], verts[on[i]], verts[on[i + 1]]};
      if (tetrahedron_volume(t) > 1e-14) tets.push_back(t);
    }
  }
  return tets;
}

double integrate_power_product(const Tetrahedron& T, const std::vector<PowerFactor>& factors, int n) {
  std::array<int, 4> perm{0, 1, 2, 3};
  const std::size_t F = factors.size();
  std::vector<double> scale(F, 0.0);
  for (std::size_t f = 0; f < F; ++f)
    for (const auto& p : T) scale[f] = std::max(scale[f], std::abs(factors[f].affine(p)));

  std::vector<double> Lv(F), Lm(F), Lf(F), Lc(F);
  std::vector<int> level(F);
  std::vector<double> onT(n), onST(static_cast<std::size_t>(n) * n);
  double total = 0.0;
  do {
    const Eigen::Vector3d v = T[perm[0]];
    const Eigen::Vector3d me = 0.5 * (T[perm[0]] + T[perm[1]]);
    const Eigen::Vector3d cf = (T[perm[0]] + T[perm[1]] + T[perm[2]]) / 3.0;
    const Eigen::Vector3d ct = 0.25 * (T[0] + T[1] + T[2] + T[3]);
    Eigen::Matrix3d J;
    J << me - v, cf - me, ct - cf;
    const double det = std::abs(J.determinant());
    if (det == 0.0) continue;

    double A = 0.0, B = 0.0, C = 0.0;
    for (std::size_t f = 0; f < F; ++f) {
      const auto& fac = factors[f];
      const double tol = 1e-12 * scale[f];
      Lv[f] = fac.affine(v);
      Lm[f] = fac.affine(me);
      Lf[f] = fac.affine(cf);
      Lc[f] = fac.affine(ct);
      if (Lv[f] > tol)
        level[f] = 0;
      else if (Lm[f] > tol)
        level[f] = 1;
      else if (Lf[f] > tol)
        level[f] = 2;
      else
        level[f] = 3;
      if (level[f] >= 1) A += fac.exponent;
      if (level[f] >= 2) B += fac.exponent;
      if (level[f] == 3) C += fac.exponent;
      if (Lc[f] <= tol) throw AccuracyError("power factor vanishes on the whole tetrahedron");
    }
    const auto& R = gauss_jacobi01(n, 2.0 + A);
    const auto& S = gauss_jacobi01(n, 1.0 + B);
    const auto& Tt = gauss_jacobi01(n, C);

    double constant = det;
    for (std::size_t f = 0; f < F; ++f)
      if (level[f] == 3) constant *= std::pow(Lc[f], factors[f].exponent);
    for (int c = 0; c < n; ++c) {
      const double t = Tt.nodes(c);
      double p = Tt.weights(c);
      for (std::size_t f = 0; f < F; ++f)
        if (level[f] == 2) p *= std::pow(Lf[f] + t * (Lc[f] - Lf[f]), factors[f].exponent);
      onT[c] = p;
    }
    for (int b = 0; b < n; ++b) {
      const double s = S.nodes(b);
      for (int c = 0; c < n; ++c) {
        const double t = Tt.nodes(c);
        double p = S.weights(b) * onT[c];
        for (std::size_t f = 0; f < F; ++f)
          if (level[f] == 1) p *= std::pow(Lm[f] + s * (Lf[f] - Lm[f]) + s * t * (Lc[f] - Lf[f]), factors[f].exponent);
        onST[static_cast<std::size_t>(b) * n + c] = p;
      }
    }
    double sub = 0.0;
    for (int a = 0; a < n; ++a) {
      const double r = R.nodes(a);
      double acc = 0.0;
      for (int b = 0; b < n; ++b) {
        const double s = S.nodes(b);
        for (int c = 0; c < n; ++c) {
          const double t = Tt.nodes(c);
          double p = onST[static_cast<std::size_t>(b) * n + c];
          for (std::size_t f = 0; f < F; ++f)
            if (level[f] == 0)
              p *= std::pow(Lv[f] + r * (Lm[f] - Lv[f]) + r * s * (Lf[f] - Lm[f]) + r * s * t * (Lc[f] - Lf[f]),
                            factors[f].exponent);
          acc += p;
        }
      }
      sub += R.weights(a) * acc;
    }
    total += constant * sub;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

}  // namespace hermite
