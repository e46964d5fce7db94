#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Core>

namespace hermite {

struct RandomStream {
  std::uint64_t seed = 0;
  std::uint64_t streamIndex = 0;
  bool operator==(const RandomStream&) const = default;
};

// splitmix64 finalizer
std::uint64_t mix64(std::uint64_t x);

// Stream index for replicate r of cell c; a pure function of (c, r).
std::uint64_t derive_stream_index(std::uint64_t cell, std::uint64_t replicate);

// Standard normals from a stream: mt19937_64 seeded from the four 32-bit
// halves of (seed, streamIndex), 53-bit uniforms (k + 1/2) 2^-53, Marsaglia
// polar pairs (u branch first, then v).
class NormalSource {
 public:
  explicit NormalSource(const RandomStream& stream);

  double uniform();  // in (0, 1)
  double operator()();
  void fill(Eigen::Ref<Eigen::VectorXd> out);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool hasSpare_ = false;
};

}  // namespace hermite
