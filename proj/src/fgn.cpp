#include "hermite/fgn.hpp"

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Cholesky>
#include <unsupported/Eigen/FFT>

#include "hermite/constants.hpp"
#include "hermite/errors.hpp"

namespace hermite {

namespace {

void check_hurst(double H) {
  if (!(H > 0.0 && H < 1.0)) throw ParameterDomainError("fGn needs H in (0, 1)");
}

Eigen::FFT<double>& thread_fft() {
  thread_local Eigen::FFT<double> fft;
  return fft;
}

}  // namespace

Eigen::VectorXd embedding_eigenvalues(double H, std::int64_t n) {
  check_hurst(H);
  if (n < 1) throw ParameterDomainError("fGn length must be >= 1");
  const std::int64_t M = 2 * n;
  std::vector<double> row(M);
  for (std::int64_t k = 0; k <= n; ++k) row[k] = fgn_autocovariance(H, k);
  for (std::int64_t k = n + 1; k < M; ++k) row[k] = row[M - k];
  std::vector<std::complex<double>> spectrum;
  thread_fft().fwd(spectrum, row);
  Eigen::VectorXd lambda(M);
  for (std::int64_t k = 0; k < M; ++k) lambda(k) = spectrum[k].real();
  return lambda;
}

CirculantFgn::CirculantFgn(double H, std::int64_t n) : H_(H), n_(n) {
  eigenvalues_ = embedding_eigenvalues(H, n);
  const double top = eigenvalues_.maxCoeff();
  for (Eigen::Index k = 0; k < eigenvalues_.size(); ++k) {
    if (eigenvalues_(k) < 0.0) {
      if (eigenvalues_(k) < -1e-10 * top)
        throw EmbeddingError("circulant embedding has a material negative eigenvalue at frequency " +
                             std::to_string(k));
      eigenvalues_(k) = 0.0;
    }
  }
  scale_ = (eigenvalues_ / static_cast<double>(2 * n)).cwiseSqrt();
}

GaussianSeries CirculantFgn::sample(const RandomStream& stream) const {
  NormalSource normals(stream);
  return sample(normals);
}

GaussianSeries CirculantFgn::sample(NormalSource& normals) const {
  // Hermitian spectrum W (W_{2n-k} = conj W_k) so that FFT(W) is real: one
  // normal at frequencies 0 and n, a complex pair at each frequency between.
  // Only the half spectrum is stored; sum_k W_k e^{-2 pi i jk/2n} is computed
  // as an unscaled real inverse transform of conj W.
  thread_local Eigen::FFT<double> fft;
  thread_local std::vector<std::complex<double>> half;
  thread_local std::vector<double> y;
  fft.SetFlag(Eigen::FFT<double>::HalfSpectrum);
  fft.SetFlag(Eigen::FFT<double>::Unscaled);
  half.resize(n_ + 1);
  half[0] = scale_(0) * normals();
  const double r2 = std::sqrt(0.5);
  for (std::int64_t k = 1; k < n_; ++k) {
    const double re = normals();
    const double im = normals();
    half[k] = scale_(k) * r2 * std::complex<double>(re, -im);
  }
  half[n_] = scale_(n_) * normals();
  fft.inv(y, half, 2 * n_);
  GaussianSeries out;
  out.hurst = H_;
  out.kind = SeriesKind::circulant;
  out.values = Eigen::Map<const Eigen::VectorXd>(y.data(), n_);
  return out;
}

Eigen::VectorXd CirculantFgn::implied_covariance() const {
  const std::int64_t M = 2 * n_;
  std::vector<std::complex<double>> lam(M), cov;
  for (std::int64_t k = 0; k < M; ++k) lam[k] = eigenvalues_(k);
  thread_fft().inv(cov, lam);
  Eigen::VectorXd out(n_);
  for (std::int64_t k = 0; k < n_; ++k) out(k) = cov[k].real();
  return out;
}

GaussianSeries generate_fgn_circulant(double H, std::int64_t n, const RandomStream& stream) {
  return CirculantFgn(H, n).sample(stream);
}

namespace {

Eigen::MatrixXd toeplitz(const Eigen::VectorXd& r) {
  const Eigen::Index n = r.size();
  Eigen::MatrixXd C(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) C(i, j) = r(i > j ? i - j : j - i);
  return C;
}

}  // namespace

Eigen::MatrixXd fgn_covariance_matrix(double H, std::int64_t n) {
  Eigen::VectorXd r(n);
  for (std::int64_t k = 0; k < n; ++k) r(k) = fgn_autocovariance(H, k);
  return toeplitz(r);
}

Eigen::MatrixXd toeplitz_cholesky(const Eigen::VectorXd& r) {
  const Eigen::MatrixXd C = toeplitz(r);
  Eigen::LLT<Eigen::MatrixXd> llt(C);
  if (llt.info() == Eigen::Success) return llt.matrixL();
  // locate the first non-positive pivot with an unblocked factorization
  const Eigen::Index n = r.size();
  Eigen::MatrixXd A = C;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double pivot = A(j, j) - A.row(j).head(j).squaredNorm();
    if (!(pivot > 0.0))
      throw FactorizationError("Toeplitz covariance is not positive definite at pivot " + std::to_string(j),
                               static_cast<std::size_t>(j));
    A(j, j) = std::sqrt(pivot);
    for (Eigen::Index i = j + 1; i < n; ++i) A(i, j) = (A(i, j) - A.row(i).head(j).dot(A.row(j).head(j))) / A(j, j);
  }
  throw FactorizationError("Toeplitz covariance factorization failed", static_cast<std::size_t>(n - 1));
}

CholeskyFgn::CholeskyFgn(double H, std::int64_t n) : H_(H) {
  check_hurst(H);
  if (n < 1) throw ParameterDomainError("fGn length must be >= 1");
  if (n > maxSize) throw ResourceError("dense Cholesky generator is limited to n <= 4096");
  Eigen::VectorXd r(n);
  for (std::int64_t k = 0; k < n; ++k) r(k) = fgn_autocovariance(H, k);
  L_ = toeplitz_cholesky(r);
}

GaussianSeries CholeskyFgn::sample(const RandomStream& stream) const {
  NormalSource normals(stream);
  Eigen::VectorXd z(L_.rows());
  normals.fill(z);
  GaussianSeries out;
  out.hurst = H_;
  out.kind = SeriesKind::cholesky;
  out.values = L_.triangularView<Eigen::Lower>() * z;
  return out;
}

GaussianSeries generate_fgn_cholesky(double H, std::int64_t n, const RandomStream& stream) {
  return CholeskyFgn(H, n).sample(stream);
}

}  // namespace hermite
