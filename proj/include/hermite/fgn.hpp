#pragma once

#include <cstdint>
#include <memory>

#include <Eigen/Core>

#include "hermite/random.hpp"

namespace hermite {

enum class SeriesKind { circulant, cholesky };

struct GaussianSeries {
  double hurst = 0.0;
  Eigen::VectorXd values;
  SeriesKind kind = SeriesKind::circulant;
};

// Eigenvalues of the size-2n circulant whose first row is
// [r(0), ..., r(n-1), r(n), r(n-1), ..., r(1)], in FFT frequency order.
Eigen::VectorXd embedding_eigenvalues(double H, std::int64_t n);

// Circulant embedding sampler with the spectrum computed once per (H, n).
// sample() is const and may be called from several threads at once.
class CirculantFgn {
 public:
  CirculantFgn(double H, std::int64_t n);

  double hurst() const { return H_; }
  std::int64_t size() const { return n_; }

  // Consumes 2n normals in frequency order: one at frequency 0, a (re, im)
  // pair for each of 1..n-1, one at frequency n.
  GaussianSeries sample(const RandomStream& stream) const;
  GaussianSeries sample(NormalSource& normals) const;

  // Covariance at lags 0..n-1 implied by the (clamped) spectrum.
  Eigen::VectorXd implied_covariance() const;

 private:
  double H_;
  std::int64_t n_;
  Eigen::VectorXd eigenvalues_;
  Eigen::VectorXd scale_;  // sqrt(lambda / 2n)
};

GaussianSeries generate_fgn_circulant(double H, std::int64_t n, const RandomStream& stream);

// Dense Toeplitz covariance with its Cholesky factor, for n <= 4096.
class CholeskyFgn {
 public:
  static constexpr std::int64_t maxSize = 4096;

  CholeskyFgn(double H, std::int64_t n);

  const Eigen::MatrixXd& factor() const { return L_; }
  // Consumes the first n normals of the stream.
  GaussianSeries sample(const RandomStream& stream) const;

 private:
  double H_;
  Eigen::MatrixXd L_;
};

GaussianSeries generate_fgn_cholesky(double H, std::int64_t n, const RandomStream& stream);

Eigen::MatrixXd fgn_covariance_matrix(double H, std::int64_t n);

// Lower Cholesky factor of the symmetric Toeplitz matrix with first column r.
// Throws FactorizationError carrying the first failing pivot.
Eigen::MatrixXd toeplitz_cholesky(const Eigen::VectorXd& r);

}  // namespace hermite
