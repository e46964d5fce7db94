#include "hermite/simulator.hpp"

#include <cmath>
#include <string>

#include "hermite/errors.hpp"
#include "hermite/parallel.hpp"

namespace hermite {

double sigma_n(int q, double hPrime, std::int64_t n) {
  if (q < 1) throw ParameterDomainError("sigma_n needs q >= 1");
  if (n < 1) throw ParameterDomainError("sigma_n needs n >= 1");
  // stationarity folds the double sum into n + 2 sum_k (n-k) r(k)^q
  double sum = static_cast<double>(n), comp = 0.0;
  for (std::int64_t k = 1; k < n; ++k) {
    const double term = 2.0 * static_cast<double>(n - k) * std::pow(fgn_autocovariance(hPrime, k), q);
    const double t = sum + term;
    comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
  }
  double fact = 1.0;
  for (int i = 2; i <= q; ++i) fact *= i;
  return std::sqrt(fact * (sum + comp));
}

namespace {

std::int64_t checked_grid(std::int64_t N, std::int64_t m, std::int64_t ceiling) {
  if (N < 1) throw ParameterDomainError("observation grid needs N >= 1");
  if (m < 1) throw ParameterDomainError("oversampling needs m >= 1");
  if (m > ceiling / N)
    throw ResourceError("internal grid m*N = " + std::to_string(N) + "*" + std::to_string(m) +
                        " exceeds the ceiling " + std::to_string(ceiling));
  return m * N;
}

}  // namespace

PathSimulator::PathSimulator(const HurstParams& params, std::int64_t N, std::int64_t m, std::int64_t ceiling)
    : params_(params),
      N_(N),
      m_(m),
      sigma_(sigma_n(params.q, params.hPrime, checked_grid(N, m, ceiling))),
      fgn_(params.hPrime, m * N) {}

HermitePath PathSimulator::simulate(const RandomStream& stream) const {
  const Eigen::VectorXd x = fgn_.sample(stream).values;
  HermitePath path;
  path.params = params_;
  path.N = N_;
  path.oversampling = m_;
  path.sigmaN = sigma_;
  path.provenance = stream;
  path.values.resize(N_ + 1);
  path.values(0) = 0.0;
  const int q = params_.q;
  double running = 0.0;
  std::int64_t i = 0;
  for (std::int64_t j = 1; j <= N_; ++j) {
    for (const std::int64_t end = j * m_; i < end; ++i) running += hermite_polynomial(q, x(i));
    path.values(j) = running / sigma_;
  }
  return path;
}

HermitePath simulate_path(const HurstParams& params, std::int64_t N, std::int64_t m, const RandomStream& stream,
                          std::int64_t ceiling) {
  return PathSimulator(params, N, m, ceiling).simulate(stream);
}

std::vector<double> simulate_rosenblatt_marginal(double hSecond, int reps, const RandomStream& stream, std::int64_t m,
                                                 unsigned workers) {
  if (reps < 0) throw ParameterDomainError("replicate count must be nonnegative");
  // at q = 2 the target index equals the limit parameter
  const PathSimulator sim(derive_params(hSecond, 2), 1, m);
  return parallel_map(static_cast<std::size_t>(reps), workers ? workers : default_workers(), [&](std::size_t r) {
    return sim.simulate(RandomStream{stream.seed, derive_stream_index(stream.streamIndex, r)}).values(1);
  });
}

}  // namespace hermite
