// Gaussian quadrature on segments, triangles, squares and cubes, plus the
// affine mappings onto physical mesh entities.
#pragma once

#include <Eigen/Dense>

#include "wg/mesh.hpp"

namespace wg {

struct QuadRule {
  Eigen::Matrix<double, Eigen::Dynamic, 3> points;  // one row per point
  Eigen::VectorXd weights;
  int exact_degree = 0;

  int size() const { return int(weights.size()); }
  Vec3 point(int q) const { return points.row(q).transpose(); }
};

// Gauss-Legendre on [0,1]; exact for polynomials of degree 2*order - 1.
QuadRule segment_rule(int order);

// Symmetric rule on the reference triangle {x,y >= 0, x+y <= 1}; exact for
// total degree 2*order - 1. Built as a conical Gauss-Jacobi x Gauss-Legendre
// product averaged over the three rotations of the triangle.
QuadRule triangle_rule(int order);

// Tensor-product Gauss-Legendre on the unit square (dim 2) or cube (dim 3).
QuadRule tensor_rule(int order, int dim);

// Rules mapped onto a physical cell or face; weights sum to its measure.
QuadRule cell_rule(const Mesh& mesh, int cell, int order);
QuadRule face_rule(const Mesh& mesh, int face, int order);

// Default order used for coefficient integrals and error norms: the mapped
// rules integrate degree-8 polynomials exactly, keeping integration error
// negligible next to the discretization error.
inline constexpr int kDefaultOrder = 5;

}  // namespace wg
