#pragma once

#include <array>
#include <vector>

#include <Eigen/Core>

namespace hermite {

// normal . x <= bound
struct Halfspace {
  Eigen::Vector3d normal;
  double bound;
};

using Tetrahedron = std::array<Eigen::Vector3d, 4>;

// (gradient . x + offset)^exponent, with the affine part nonnegative on the
// integration domain.
struct PowerFactor {
  Eigen::Vector3d gradient;
  double offset;
  double exponent;
  double affine(const Eigen::Vector3d& x) const { return gradient.dot(x) + offset; }
};

double tetrahedron_volume(const Tetrahedron& t);

// Decomposes the bounded polytope given by the halfspaces into tetrahedra
// coning from one vertex over triangulated facets.
std::vector<Tetrahedron> tetrahedralize(const std::vector<Halfspace>& halfspaces);

// Integral over the tetrahedron of the product of the factors. Each of the 24
// barycentric sub-tetrahedra (vertex, edge midpoint, face centroid, centroid)
// is mapped from the unit cube so that every factor vanishing on a face,
// edge or vertex of the tetrahedron splits into a monomial in the cube
// coordinates times a positive polynomial; the monomials go into Gauss-Jacobi
// weights, leaving a smooth integrand.
double integrate_power_product(const Tetrahedron& t, const std::vector<PowerFactor>& factors, int nodes);

}  // namespace hermite
