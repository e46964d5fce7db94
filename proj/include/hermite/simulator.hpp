#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "hermite/constants.hpp"
#include "hermite/fgn.hpp"
#include "hermite/random.hpp"

namespace hermite {

inline constexpr std::int64_t defaultOversampling = 64;
inline constexpr std::int64_t defaultGridCeiling = std::int64_t{1} << 24;
inline constexpr std::int64_t defaultRosenblattOversampling = std::int64_t{1} << 14;

struct HermitePath {
  HurstParams params;
  std::int64_t N = 0;
  std::int64_t oversampling = 1;
  Eigen::VectorXd values;  // Z at 0, 1/N, ..., 1
  double sigmaN = 0.0;
  RandomStream provenance;
};

// Standard deviation of sum_{i<=n} H_q(X_i) for unit fGn X with index hPrime.
double sigma_n(int q, double hPrime, std::int64_t n);

// Aggregated Hermite transform of fGn at index H', normalized by sigma_n.
// Holds the circulant spectrum so repeated draws share it; simulate() is
// const and thread-safe.
class PathSimulator {
 public:
  PathSimulator(const HurstParams& params, std::int64_t N, std::int64_t m = defaultOversampling,
                std::int64_t ceiling = defaultGridCeiling);

  HermitePath simulate(const RandomStream& stream) const;

  std::int64_t N() const { return N_; }
  std::int64_t oversampling() const { return m_; }
  double sigmaN() const { return sigma_; }
  const HurstParams& params() const { return params_; }

 private:
  HurstParams params_;
  std::int64_t N_, m_;
  double sigma_;
  CirculantFgn fgn_;
};

HermitePath simulate_path(const HurstParams& params, std::int64_t N, std::int64_t m, const RandomStream& stream,
                          std::int64_t ceiling = defaultGridCeiling);

// reps draws of the unit-time value of the q=2 process with index hSecond;
// draw r uses stream {seed, derive_stream_index(streamIndex, r)}.
std::vector<double> simulate_rosenblatt_marginal(double hSecond, int reps, const RandomStream& stream,
                                                 std::int64_t m = defaultRosenblattOversampling,
                                                 unsigned workers = 0);

// Discretized double Wiener integral with the q=2 kernel evaluated at cell
// midpoints, diagonal excluded. Cells are graded towards the origin with
// edges (k/G)^grading; grading = 1 is the uniform grid. The kernel matrix is
// built once.
class RosenblattQuadraticForm {
 public:
  static constexpr int maxGrid = 2048;
  static constexpr double defaultGrading = 3.0;

  RosenblattQuadraticForm(double hSecond, int gridSize, double grading = defaultGrading);

  double sample(const RandomStream& stream) const;
  const Eigen::MatrixXd& kernel() const { return A_; }  // includes the d(hSecond, 2) factor
  int gridSize() const { return static_cast<int>(A_.rows()); }
  const Eigen::VectorXd& midpoints() const { return mids_; }
  const Eigen::VectorXd& widths() const { return widths_; }
  // variance of the discrete form, 2 sum_{i != j} A_ij^2 w_i w_j
  double exact_variance() const;

 private:
  Eigen::MatrixXd A_;
  Eigen::VectorXd mids_, widths_;
};

double rosenblatt_quadratic_form_oracle(double hSecond, int gridSize, const RandomStream& stream);

}  // namespace hermite
