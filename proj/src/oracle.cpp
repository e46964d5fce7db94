#include "hermite/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

#include "hermite/errors.hpp"
#include "hermite/quadrature_rules.hpp"
#include "hermite/singular_quadrature.hpp"

namespace hermite {

namespace {

constexpr double refinementTolerance = 1e-6;

void check_spec(const QuadratureSpec& spec) {
  if (spec.nodesPerCell < 4) throw ParameterDomainError("nodesPerCell must be at least 4");
}

double weight_mass(double e) { return 2.0 / ((e + 1.0) * (e + 2.0)); }

PowerFactor factor(double g0, double g1, double g2, double offset, double exponent) {
  return PowerFactor{Eigen::Vector3d(g0, g1, g2), offset, exponent};
}

double integrate(const std::vector<Tetrahedron>& tets, std::vector<PowerFactor> factors, int n) {
  factors.erase(std::remove_if(factors.begin(), factors.end(), [](const PowerFactor& f) { return f.exponent == 0.0; }),
                factors.end());
  double s = 0.0;
  for (const auto& t : tets) s += integrate_power_product(t, factors, n);
  return s;
}

const Tetrahedron unitSimplex{Eigen::Vector3d(0, 0, 0), Eigen::Vector3d(1, 0, 0), Eigen::Vector3d(0, 1, 0),
                              Eigen::Vector3d(0, 0, 1)};

// Lag 0: sort the four points. Labels 0 = y, 1 = z, 2 = y', 3 = z'; the gaps
// between consecutive sorted points live on the unit simplex and the leftmost
// point slides over a length 1 - sum(gaps).
double lag_zero(double e1, double e2, int n) {
  std::array<int, 4> order{0, 1, 2, 3};
  auto encode = [](const std::array<int, 4>& o) { return ((o[0] * 4 + o[1]) * 4 + o[2]) * 4 + o[3]; };
  // Reversal and the relabelling (y,y') <-> (z,z') leave the integrand
  // unchanged, so only one ordering per orbit is integrated.
  std::map<int, std::pair<std::array<int, 4>, int>> orbits;
  do {
    std::array<int, 4> rev{order[3], order[2], order[1], order[0]};
    const auto swap = [](std::array<int, 4> o) {
      for (auto& l : o) l ^= 1;
      return o;
    };
    const int key = std::min({encode(order), encode(rev), encode(swap(order)), encode(swap(rev))});
    auto& slot = orbits[key];
    if (slot.second == 0) slot.first = order;
    ++slot.second;
  } while (std::next_permutation(order.begin(), order.end()));

  const std::array<std::tuple<int, int, double>, 4> edges{
      std::tuple{0, 1, e1}, std::tuple{2, 3, e1}, std::tuple{0, 2, e2}, std::tuple{1, 3, e2}};
  double total = 0.0;
  for (const auto& [key, entry] : orbits) {
    const auto& [ord, count] = entry;
    std::array<int, 4> pos{};
    for (int i = 0; i < 4; ++i) pos[ord[i]] = i;
    std::vector<PowerFactor> fs{factor(-1, -1, -1, 1, 1.0)};
    for (const auto& [u, v, e] : edges) {
      const int lo = std::min(pos[u], pos[v]), hi = std::max(pos[u], pos[v]);
      Eigen::Vector3d g = Eigen::Vector3d::Zero();
      for (int j = lo; j < hi; ++j) g(j) = 1.0;
      fs.push_back(PowerFactor{g, 0.0, e});
    }
    total += count * integrate({unitSimplex}, fs, n);
  }
  return total;
}

// Lag 1: with the upper pair shifted into [1,2], write G for the gap between
// the pairs and s1, s2 for the spreads within them. The configurations with a
// given (G, s1, s2) occupy a length mu, piecewise affine over four regions.
struct LagOneRegion {
  std::vector<Tetrahedron> tets;
  PowerFactor mu;
  double multiplicity;
};

const std::vector<LagOneRegion>& lag_one_regions() {
  static const std::vector<LagOneRegion> regions = [] {
    const auto hs = [](double g0, double g1, double g2, double b) { return Halfspace{Eigen::Vector3d(g0, g1, g2), b}; };
    const std::vector<Halfspace> positive{hs(-1, 0, 0, 0), hs(0, -1, 0, 0), hs(0, 0, -1, 0)};
    auto with = [&](std::vector<Halfspace> extra) {
      extra.insert(extra.end(), positive.begin(), positive.end());
      return tetrahedralize(extra);
    };
    std::vector<LagOneRegion> r;
    r.push_back({with({hs(1, 1, 0, 1), hs(1, 0, 1, 1)}), factor(1, 0, 0, 0, 1.0), 1.0});
    // the mirror region with s1 and s2 exchanged contributes equally
    r.push_back({with({hs(1, 1, 0, 1), hs(-1, 0, -1, -1), hs(0, 0, 1, 1)}), factor(0, 0, -1, 1, 1.0), 2.0});
    r.push_back({with({hs(-1, -1, 0, -1), hs(-1, 0, -1, -1), hs(1, 1, 1, 2)}), factor(-1, -1, -1, 2, 1.0), 1.0});
    return r;
  }();
  return regions;
}

double lag_one(double e1, double e2, int n) {
  double total = 0.0;
  for (const auto& region : lag_one_regions()) {
    const PowerFactor s1 = factor(0, 1, 0, 0, e1), s2 = factor(0, 0, 1, 0, e1);
    const double outer = integrate(region.tets, {region.mu, s1, s2, factor(1, 0, 0, 0, e2), factor(1, 1, 1, 0, e2)}, n);
    const double inner = integrate(region.tets, {region.mu, s1, s2, factor(1, 1, 0, 0, e2), factor(1, 0, 1, 0, e2)}, n);
    total += region.multiplicity * 2.0 * (outer + inner);
  }
  return total;
}

double tensor_gauss_legendre(double e1, double e2, std::int64_t lag, int n) {
  const auto& g = gauss_legendre01(n);
  const double l = static_cast<double>(lag);
  double total = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const double wab = g.weights(a) * g.weights(b) * std::pow(std::abs(g.nodes(a) - g.nodes(b)), e1);
      for (int c = 0; c < n; ++c) {
        const double fac = std::pow(std::abs(g.nodes(a) - g.nodes(c) + l), e2);
        for (int d = 0; d < n; ++d)
          total += wab * g.weights(c) * g.weights(d) * fac * std::pow(std::abs(g.nodes(c) - g.nodes(d)), e1) *
                   std::pow(std::abs(g.nodes(b) - g.nodes(d) + l), e2);
      }
    }
  return total;
}

// Chebyshev polynomials of the first kind at the r first-kind points, row i
// holding T_i.
Eigen::MatrixXd chebyshev_at_points(int r) {
  Eigen::MatrixXd T(r, r);
  for (int i = 0; i < r; ++i)
    for (int m = 0; m < r; ++m) T(i, m) = std::cos(M_PI * i * (m + 0.5) / r);
  return T;
}

// M(i,k) = int int |y-z|^e T_i(2y-1) T_k(2z-1) dy dz, exact for these
// polynomial degrees: split at y = z, put y - z = s with weight s^e (1-s).
Eigen::MatrixXd diagonal_moments(double e, int r) {
  const auto& S = gauss_jacobi01(r + 1, e, 1.0);
  const auto& W = gauss_legendre01(r + 1);
  const int np = static_cast<int>(S.nodes.size() * W.nodes.size());
  Eigen::MatrixXd Ty(r, np), Tz(r, np);
  Eigen::VectorXd w(np);
  int p = 0;
  for (Eigen::Index a = 0; a < S.nodes.size(); ++a)
    for (Eigen::Index b = 0; b < W.nodes.size(); ++b, ++p) {
      const double s = S.nodes(a), z = (1.0 - s) * W.nodes(b), y = z + s;
      w(p) = S.weights(a) * W.weights(b);
      const double ty = 2.0 * y - 1.0, tz = 2.0 * z - 1.0;
      for (int i = 0; i < r; ++i) {
        Ty(i, p) = std::cos(i * std::acos(std::clamp(ty, -1.0, 1.0)));
        Tz(i, p) = std::cos(i * std::acos(std::clamp(tz, -1.0, 1.0)));
      }
    }
  const Eigen::MatrixXd B = Ty * w.asDiagonal() * Tz.transpose();
  return B + B.transpose();
}

double separated_lag(double e1, double e2, std::int64_t lag, int r) {
  static std::mutex mutex;
  static std::map<std::pair<double, int>, Eigen::MatrixXd> momentCache;
  static std::map<int, Eigen::MatrixXd> pointCache;
  Eigen::MatrixXd M, T;
  {
    std::lock_guard lock(mutex);
    auto it = momentCache.find({e1, r});
    if (it == momentCache.end()) it = momentCache.emplace(std::pair{e1, r}, diagonal_moments(e1, r)).first;
    M = it->second;
    auto jt = pointCache.find(r);
    if (jt == pointCache.end()) jt = pointCache.emplace(r, chebyshev_at_points(r)).first;
    T = jt->second;
  }
  Eigen::MatrixXd F(r, r);
  const double l = static_cast<double>(lag);
  for (int m = 0; m < r; ++m)
    for (int k = 0; k < r; ++k) {
      const double ym = 0.5 * (std::cos(M_PI * (m + 0.5) / r) + 1.0);
      const double yk = 0.5 * (std::cos(M_PI * (k + 0.5) / r) + 1.0);
      F(m, k) = std::pow(ym - yk + l, e2);
    }
  Eigen::MatrixXd C = (2.0 / r) * T * F * T.transpose() * (2.0 / r);
  C.row(0) *= 0.5;
  C.col(0) *= 0.5;
  return (M.array() * (C * M * C.transpose()).array()).sum();
}

double cached_near_lag(double e1, double e2, std::int64_t lag, const QuadratureSpec& spec) {
  static std::mutex mutex;
  static std::map<std::tuple<double, double, std::int64_t, int, bool>, double> cache;
  const auto key = std::tuple{e1, e2, lag, spec.nodesPerCell, spec.diagonalSplitting};
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  double v;
  if (!spec.diagonalSplitting)
    v = tensor_gauss_legendre(e1, e2, lag, spec.nodesPerCell);
  else
    v = lag == 0 ? lag_zero(e1, e2, spec.nodesPerCell) : lag_one(e1, e2, spec.nodesPerCell);
  std::lock_guard lock(mutex);
  cache.emplace(key, v);
  return v;
}

struct Exponents {
  double e1, e2, prefactor;
};

Exponents exponents(const HurstParams& p, int k) {
  const double alpha = 2.0 * p.hPrime - 2.0;
  const double d = d_constant(p);
  return {alpha * k, alpha * (p.q - k), std::pow(a_constant(p.hPrime), 2 * p.q) * std::pow(d, 4)};
}

double lag_sum(double e1, double e2, std::int64_t N, const QuadratureSpec& spec) {
  double s = static_cast<double>(N) * unit_cell_integral(e1, e2, 0, spec);
  for (std::int64_t l = 1; l < N; ++l) s += 2.0 * static_cast<double>(N - l) * unit_cell_integral(e1, e2, l, spec);
  return s;
}

QuadratureSpec doubled(const QuadratureSpec& s) { return {2 * s.nodesPerCell, s.diagonalSplitting}; }

void check_refinement(double coarse, double fine, const std::string& what) {
  if (!std::isfinite(coarse) || !std::isfinite(fine)) throw AccuracyError(what + ": quadrature hit a singularity");
  if (std::abs(fine - coarse) > refinementTolerance * std::abs(fine))
    throw AccuracyError(what + ": node doubling changed the value by " +
                        std::to_string(std::abs(fine - coarse) / std::abs(fine)) + " relative");
}

void check_N(std::int64_t N) {
  if (N < 1 || N > maxOracleN) throw ParameterDomainError("oracle N must lie in [1, 1024]");
}

double factorial(int n) { return std::tgamma(n + 1.0); }

}  // namespace

double unit_cell_integral(double e1, double e2, std::int64_t lag, const QuadratureSpec& spec) {
  check_spec(spec);
  if (lag < 0) throw ParameterDomainError("lag must be nonnegative");
  if (e1 <= -1.0 || e2 <= -1.0) throw ParameterDomainError("exponents must exceed -1");
  if (lag <= 1) return cached_near_lag(e1, e2, lag, spec);
  return separated_lag(e1, e2, lag, spec.nodesPerCell);
}

double contraction_inner_product(const HurstParams& p, int k, std::int64_t lag, const QuadratureSpec& spec) {
  if (k < 0 || k > p.q - 1) throw ParameterDomainError("k must lie in [0, q-1]");
  const auto [e1, e2, pre] = exponents(p, k);
  const double coarse = unit_cell_integral(e1, e2, lag, spec);
  const double fine = unit_cell_integral(e1, e2, lag, doubled(spec));
  check_refinement(coarse, fine, "contraction inner product");
  return pre * coarse;
}

double contraction_asymptote(const HurstParams& p, int k, std::int64_t lag) {
  if (k < 0 || k > p.q - 1) throw ParameterDomainError("k must lie in [0, q-1]");
  if (lag < 1) throw ParameterDomainError("lag must be positive");
  const auto [e1, e2, pre] = exponents(p, k);
  const double m = weight_mass(e1);
  return pre * m * m * std::pow(static_cast<double>(lag), 2.0 * e2);
}

double expected_T2q2k_squared_bound(const HurstParams& p, int k, std::int64_t N, const QuadratureSpec& spec) {
  if (k < 0 || k > p.q - 1) throw ParameterDomainError("k must lie in [0, q-1]");
  check_N(N);
  const auto [e1, e2, pre] = exponents(p, k);
  const double coarse = lag_sum(e1, e2, N, spec);
  const double fine = lag_sum(e1, e2, N, doubled(spec));
  check_refinement(coarse, fine, "chaos term second moment");
  const double n = static_cast<double>(N);
  return factorial(2 * p.q - 2 * k) * pre * coarse / (n * n);
}

double expected_T2_squared(const HurstParams& p, std::int64_t N, const QuadratureSpec& spec) {
  return expected_T2q2k_squared_bound(p, p.q - 1, N, spec);
}

double chaos_term_asymptote(const HurstParams& p, int k, std::int64_t N, const QuadratureSpec& spec) {
  if (k < 0 || k > p.q - 1) throw ParameterDomainError("k must lie in [0, q-1]");
  if (N < 1) throw ParameterDomainError("N must be positive");
  const auto [e1, e2, pre] = exponents(p, k);
  const double m = weight_mass(e1);
  const double n = static_cast<double>(N);
  const double lead = factorial(2 * p.q - 2 * k) * pre;
  const double power = 2.0 * e2;
  if (std::abs(power + 1.0) < 1e-12) return lead * 2.0 * m * m * std::log(n) / n;
  if (power > -1.0) return lead * 2.0 * m * m * std::pow(n, power) / ((power + 1.0) * (power + 2.0));
  // summable lags: J(0) + 2 sum J(l), tail from the large-lag form
  constexpr std::int64_t L = 2048;
  double s = unit_cell_integral(e1, e2, 0, spec);
  for (std::int64_t l = 1; l <= L; ++l) s += 2.0 * unit_cell_integral(e1, e2, l, spec);
  s += 2.0 * m * m * std::pow(L + 0.5, power + 1.0) / (-power - 1.0);
  return lead * s / n;
}

}  // namespace hermite
