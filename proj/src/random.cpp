#include "hermite/random.hpp"

#include <cmath>

namespace hermite {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_stream_index(std::uint64_t cell, std::uint64_t replicate) {
  return mix64(mix64(cell) ^ (replicate + 0x632be59bd9b4e019ULL));
}

namespace {

std::mt19937_64 seeded_engine(const RandomStream& s) {
  std::seed_seq seq{static_cast<std::uint32_t>(s.seed), static_cast<std::uint32_t>(s.seed >> 32),
                    static_cast<std::uint32_t>(s.streamIndex),
                    static_cast<std::uint32_t>(s.streamIndex >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

NormalSource::NormalSource(const RandomStream& stream) : engine_(seeded_engine(stream)) {}

double NormalSource::uniform() {
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double NormalSource::operator()() {
  if (hasSpare_) {
    hasSpare_ = false;
    return spare_;
  }
  // Marsaglia polar method
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  hasSpare_ = true;
  return u * f;
}

void NormalSource::fill(Eigen::Ref<Eigen::VectorXd> out) {
  for (Eigen::Index i = 0; i < out.size(); ++i) out(i) = (*this)();
}

}  // namespace hermite
