// Per-cell objects of the lowest-order weak Galerkin elements
// (P0,P0,RT0) on triangles and (Q0,Q0,RT0) on rectangles and boxes:
// basis sets, the matrices D_K, Z_K, T_K coupling the discrete weak
// gradient, the coefficient matrices A_K, B_K, C_K, and the 2x2-block
// local stiffness matrix M_K.
#pragma once

#include <Eigen/Dense>

#include <functional>

#include "wg/mesh.hpp"
#include "wg/quadrature.hpp"

namespace wg {

enum class TriangleApproach {
  I,   // RT0 edge-normal basis chi_i = (|e_i|/2|K|)(x - x_i)
  II,  // {(1,0), (0,1), (x - xbar, y - ybar)}; D_K diagonal
};

// PDE coefficients; a null callable stands for A = I, beta = 0 or gamma = 0.
struct Coefficients {
  std::function<Eigen::Matrix3d(const Vec3&)> A;
  std::function<Vec3(const Vec3&)> beta;
  std::function<double(const Vec3&)> gamma;
};

// Basis data for one cell. The interior space is spanned by phi_0 = 1, the
// face space by the indicator phi_{b,j} of each local face, and the gradient
// space V_r(K) by the fields chi_i below. All chi have constant divergence
// and constant normal component on each face.
struct WGBasis {
  CellKind kind = CellKind::Triangle2D;
  TriangleApproach approach = TriangleApproach::II;
  int dim = 2;
  int N0 = 1, Nb = 3, NV = 3;

  std::array<Vec3, 3> tri_v;          // triangle vertices, CCW
  std::array<double, 3> edge{};       // |e_i|, edge i opposite vertex i
  std::array<Vec3, 6> normal;         // outward unit normal per local face
  std::array<double, 6> face_measure{};
  Vec3 corner = Vec3::Zero();         // Rect2D / Box3D
  Vec3 sides = Vec3::Zero();
  Vec3 barycenter = Vec3::Zero();
  double volume = 0.0;                // |K|

  Vec3 chi(int i, const Vec3& x) const;
  double div_chi(int i) const;
  double chi_dot_n(int i, int local_face) const;
};

WGBasis basis_triangle_rt0(const Mesh& mesh, int cell, TriangleApproach approach);
WGBasis basis_box_rt0(const Mesh& mesh, int cell);  // Rect2D and Box3D
WGBasis make_basis(const Mesh& mesh, int cell,
                   TriangleApproach approach = TriangleApproach::II);

// D_K[i][j] = (chi_i, chi_j)_K, Z_K[i][0] = (div chi_i, 1)_K,
// T_K[i][j] = <chi_i . n, phi_{b,j}>_dK, by the closed forms of each family.
void local_dzt(const WGBasis& basis, Eigen::MatrixXd& D, Eigen::MatrixXd& Z,
               Eigen::MatrixXd& T);

// Same matrices by quadrature against the mesh's global face orientation;
// the independent route the closed forms are checked against.
void local_dzt_quadrature(const WGBasis& basis, const Mesh& mesh, int cell, int order,
                          Eigen::MatrixXd& D, Eigen::MatrixXd& Z, Eigen::MatrixXd& T);

// Closed-form inverse of D_K for the Approach I triangle basis.
Eigen::Matrix3d dkinv_closed_triangle(const WGBasis& basis);

// Closed-form D_K^{-1} where one exists (diagonal / block structure),
// dense LU otherwise.
Eigen::MatrixXd dk_inverse(const WGBasis& basis, const Eigen::MatrixXd& D);

// Coefficient vector of grad_d v in V_r(K) for v = {v0, vb}:
// D_K^{-1} (-Z_K v0 + T_K vb).
Eigen::VectorXd discrete_gradient(const WGBasis& basis, const Eigen::VectorXd& v0,
                                  const Eigen::VectorXd& vb);

// A_K = [(A chi_j, chi_i)], B_K = [(beta . chi_j, phi_0i)],
// C_K = [(gamma phi_0j, phi_0i)] by quadrature of the given order.
void local_abc(const WGBasis& basis, const Mesh& mesh, int cell, const Coefficients& coeff,
               int order, Eigen::MatrixXd& A, Eigen::MatrixXd& B, Eigen::MatrixXd& C);

// M_K assembled from its parts. Block layout: row/col 0..N0-1 interior,
// then the Nb face dofs.
//   M00 = Z^t D^-t A D^-1 Z - B D^-1 Z + C on the interior block,
//   M0b = -Z^t D^-t A D^-1 T + B D^-1 T,
//   Mb0 = -T^t D^-t A D^-1 Z,
//   Mbb =  T^t D^-t A D^-1 T.
// Mb0 carries no convection term: face test functions have zero interior
// component, so (beta . grad_d u, v_0) vanishes there.
Eigen::MatrixXd local_stiffness(const Eigen::MatrixXd& D, const Eigen::MatrixXd& Z,
                                const Eigen::MatrixXd& T, const Eigen::MatrixXd& A,
                                const Eigen::MatrixXd& B, const Eigen::MatrixXd& C,
                                const Eigen::MatrixXd& Dinv);

// M_K by direct quadrature of the bilinear form on basis pairs; the oracle
// the algebraic formula is checked against.
Eigen::MatrixXd local_stiffness_direct(const WGBasis& basis, const Mesh& mesh, int cell,
                                       const Coefficients& coeff, int order);

// The Poisson (A = I) blocks of a triangle written with edge lengths only.
Eigen::MatrixXd poisson_stiffness_closed_triangle(const WGBasis& basis);

// Everything needed to scatter one cell.
struct LocalKernel {
  Eigen::MatrixXd D, Z, T, A, B, C;
  Eigen::MatrixXd Dinv;
  Eigen::MatrixXd M;  // (N0+Nb) x (N0+Nb)
};

LocalKernel local_kernel(const Mesh& mesh, int cell, const Coefficients& coeff, int order,
                         TriangleApproach approach = TriangleApproach::II);

}  // namespace wg
