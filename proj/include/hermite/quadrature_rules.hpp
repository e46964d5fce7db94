#pragma once

#include <Eigen/Dense>

namespace hermite {

struct QuadratureRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

// Gauss-Jacobi rule on [-1,1] for the weight (1-x)^alpha (1+x)^beta,
// computed by Golub-Welsch. alpha, beta > -1.
QuadratureRule gauss_jacobi(int n, double alpha, double beta);

// Rules on [0,1]. The cached variants are safe to call concurrently and the
// returned reference stays valid for the lifetime of the program.
const QuadratureRule& gauss_legendre01(int n);
// weight x^p on [0,1]
const QuadratureRule& gauss_jacobi01(int n, double p);
// weight x^p (1-x)^r on [0,1]
const QuadratureRule& gauss_jacobi01(int n, double p, double r);

}  // namespace hermite
