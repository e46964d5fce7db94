#pragma once

#include <cstdint>

#include "hermite/constants.hpp"

namespace hermite {

struct QuadratureSpec {
  int nodesPerCell = 16;
  // Off: lags 0 and 1 fall back to a plain tensor Gauss-Legendre rule over
  // the four-cube, which only converges algebraically.
  bool diagonalSplitting = true;
};

inline constexpr std::int64_t maxOracleN = 1024;

// J(lag) = int over [0,1]^4 of
//   |y-z|^e1 |y'-z'|^e1 |y-y'+lag|^e2 |z-z'+lag|^e2
// without the refinement check. Lags 0 and 1 are split into simplices on
// which every singular factor is absorbed by a Gauss-Jacobi weight; larger
// lags separate the smooth cross factor by tensor Chebyshev interpolation
// against exact moments of the diagonal weight.
double unit_cell_integral(double e1, double e2, std::int64_t lag, const QuadratureSpec& spec = {});

// a^{2q} d^4 J(lag) with e1 = (2H'-2)k, e2 = (2H'-2)(q-k). Throws
// AccuracyError when doubling the nodes moves the value by more than 1e-6
// relative.
double contraction_inner_product(const HurstParams& p, int k, std::int64_t lag, const QuadratureSpec& spec = {});

// Leading large-lag behaviour a^{2q} d^4 lag^{2 e2} (int int |y-z|^e1)^2.
double contraction_asymptote(const HurstParams& p, int k, std::int64_t lag);

double expected_T2_squared(const HurstParams& p, std::int64_t N, const QuadratureSpec& spec = {});

// (2q-2k)! N^{-2} a^{2q} d^4 sum_{i,j} J(i-j), which for k = q-1 is E[T2^2].
double expected_T2q2k_squared_bound(const HurstParams& p, int k, std::int64_t N, const QuadratureSpec& spec = {});

// Leading large-N behaviour of the k-th bound: a power N^{2 e2} when
// 2 e2 > -1, N^{-1} log N at 2 e2 = -1, otherwise N^{-1} times the summed
// lag series. For k = q-1 and H' > 3/4 this is c1 N^{2(2H'-2)}.
double chaos_term_asymptote(const HurstParams& p, int k, std::int64_t N, const QuadratureSpec& spec = {});

}  // namespace hermite
