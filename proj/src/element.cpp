#include "wg/element.hpp"

#include <cmath>
#include <stdexcept>

namespace wg {

using Eigen::MatrixXd;
using Eigen::VectorXd;

Vec3 WGBasis::chi(int i, const Vec3& x) const {
  if (kind == CellKind::Triangle2D) {
    if (approach == TriangleApproach::I)
      return (edge[i] / (2.0 * volume)) * (x - tri_v[i]);
    switch (i) {
      case 0: return Vec3(1, 0, 0);
      case 1: return Vec3(0, 1, 0);
      default: return x - barycenter;
    }
  }
  const int d = i / 2;
  const double t = (x(d) - corner(d)) / sides(d);
  Vec3 v = Vec3::Zero();
  v(d) = (i % 2 == 0) ? t - 1.0 : t;
  return v;
}

double WGBasis::div_chi(int i) const {
  if (kind == CellKind::Triangle2D) {
    if (approach == TriangleApproach::I) return edge[i] / volume;
    return i == 2 ? 2.0 : 0.0;
  }
  return 1.0 / sides(i / 2);
}

double WGBasis::chi_dot_n(int i, int j) const {
  if (kind == CellKind::Triangle2D && approach == TriangleApproach::II) {
    switch (i) {
      case 0: return normal[j].x();
      case 1: return normal[j].y();
      default: return 2.0 * volume / (3.0 * edge[j]);
    }
  }
  return i == j ? 1.0 : 0.0;  // Approach I and the box family are face-normal bases
}

WGBasis basis_triangle_rt0(const Mesh& mesh, int cell, TriangleApproach approach) {
  const Cell& c = mesh.cells[cell];
  if (c.kind != CellKind::Triangle2D)
    throw std::invalid_argument("basis_triangle_rt0: cell is not a triangle");
  if (c.measure <= 0.0) throw std::invalid_argument("basis_triangle_rt0: degenerate triangle");
  WGBasis b;
  b.kind = CellKind::Triangle2D;
  b.approach = approach;
  b.dim = 2;
  b.N0 = 1;
  b.Nb = b.NV = 3;
  b.volume = c.measure;
  for (int i = 0; i < 3; ++i) b.tri_v[i] = mesh.vertices[c.verts[i]];
  b.barycenter = (b.tri_v[0] + b.tri_v[1] + b.tri_v[2]) / 3.0;
  for (int i = 0; i < 3; ++i) {
    const Vec3 &pj = b.tri_v[(i + 1) % 3], &pk = b.tri_v[(i + 2) % 3];
    b.edge[i] = (pk - pj).norm();
    b.face_measure[i] = b.edge[i];
    // CCW vertices: rotating the tangent clockwise points outward
    b.normal[i] = Vec3(pk.y() - pj.y(), pj.x() - pk.x(), 0.0) / b.edge[i];
  }
  return b;
}

WGBasis basis_box_rt0(const Mesh& mesh, int cell) {
  const Cell& c = mesh.cells[cell];
  if (c.kind == CellKind::Triangle2D)
    throw std::invalid_argument("basis_box_rt0: cell is not a rectangle or box");
  WGBasis b;
  b.kind = c.kind;
  b.dim = mesh.dim;
  b.N0 = 1;
  b.Nb = b.NV = 2 * b.dim;
  b.volume = c.measure;
  b.corner = c.corner;
  b.sides = c.sides;
  b.barycenter = c.corner + 0.5 * c.sides;
  for (int d = 0; d < b.dim; ++d) {
    if (c.sides(d) <= 0.0) throw std::invalid_argument("basis_box_rt0: non-positive side length");
    Vec3 axis = Vec3::Zero();
    axis(d) = 1.0;
    b.normal[2 * d] = -axis;
    b.normal[2 * d + 1] = axis;
    b.face_measure[2 * d] = b.face_measure[2 * d + 1] = b.volume / c.sides(d);
  }
  return b;
}

WGBasis make_basis(const Mesh& mesh, int cell, TriangleApproach approach) {
  return mesh.cells[cell].kind == CellKind::Triangle2D
             ? basis_triangle_rt0(mesh, cell, approach)
             : basis_box_rt0(mesh, cell);
}

namespace {

// l_i = |e_i|^2 shorthand used by the closed triangle formulas
struct EdgeSquares {
  double l[3];
  double l123;
};

EdgeSquares edge_squares(const WGBasis& b) {
  EdgeSquares e{};
  for (int i = 0; i < 3; ++i) e.l[i] = b.edge[i] * b.edge[i];
  e.l123 = e.l[0] + e.l[1] + e.l[2];
  return e;
}

// (16|K|/l123) ones + (1/2|K|) [2 l1, l3-l12, ...]; shared by D_K^{-1} and
// the Poisson M_bb.
Eigen::Matrix3d triangle_core_matrix(const WGBasis& b) {
  const auto [l, l123] = edge_squares(b);
  Eigen::Matrix3d S;
  S << 2 * l[0], l[2] - l[0] - l[1], l[1] - l[0] - l[2],
       l[2] - l[0] - l[1], 2 * l[1], l[0] - l[1] - l[2],
       l[1] - l[0] - l[2], l[0] - l[1] - l[2], 2 * l[2];
  return (16.0 * b.volume / l123) * Eigen::Matrix3d::Ones() + S / (2.0 * b.volume);
}

}  // namespace

void local_dzt(const WGBasis& b, MatrixXd& D, MatrixXd& Z, MatrixXd& T) {
  Z.setZero(b.NV, b.N0);
  T.setZero(b.NV, b.Nb);
  if (b.kind == CellKind::Triangle2D) {
    if (b.approach == TriangleApproach::I) {
      const auto [l, l123] = edge_squares(b);
      auto lij = [&l](int i, int j) { return l[i] + l[j]; };
      Eigen::Matrix3d G;
      G << l[0] * (3 * lij(1, 2) - l[0]), b.edge[0] * b.edge[1] * (lij(0, 1) - 3 * l[2]),
          b.edge[0] * b.edge[2] * (lij(0, 2) - 3 * l[1]),
          b.edge[0] * b.edge[1] * (lij(0, 1) - 3 * l[2]), l[1] * (3 * lij(0, 2) - l[1]),
          b.edge[1] * b.edge[2] * (lij(1, 2) - 3 * l[0]),
          b.edge[0] * b.edge[2] * (lij(0, 2) - 3 * l[1]),
          b.edge[1] * b.edge[2] * (lij(1, 2) - 3 * l[0]), l[2] * (3 * lij(0, 1) - l[2]);
      D = G / (48.0 * b.volume);
      for (int i = 0; i < 3; ++i) {
        Z(i, 0) = b.edge[i];
        T(i, i) = b.edge[i];
      }
      return;
    }
    const auto es = edge_squares(b);
    D = b.volume * Eigen::Vector3d(1.0, 1.0, es.l123 / 36.0).asDiagonal();
    Z(2, 0) = 2.0 * b.volume;
    for (int j = 0; j < 3; ++j) {
      const Vec3 &pj = b.tri_v[(j + 1) % 3], &pk = b.tri_v[(j + 2) % 3];
      T(0, j) = pk.y() - pj.y();
      T(1, j) = pj.x() - pk.x();
      T(2, j) = 2.0 * b.volume / 3.0;
    }
    return;
  }
  // box family: D_K is block diagonal with (|K|/6) [2 -1; -1 2] per axis
  D.setZero(b.NV, b.NV);
  for (int d = 0; d < b.dim; ++d) {
    const double s = b.volume / 6.0;
    D(2 * d, 2 * d) = D(2 * d + 1, 2 * d + 1) = 2.0 * s;
    D(2 * d, 2 * d + 1) = D(2 * d + 1, 2 * d) = -s;
    Z(2 * d, 0) = Z(2 * d + 1, 0) = b.face_measure[2 * d];
    T(2 * d, 2 * d) = b.face_measure[2 * d];
    T(2 * d + 1, 2 * d + 1) = b.face_measure[2 * d + 1];
  }
}

void local_dzt_quadrature(const WGBasis& b, const Mesh& mesh, int cell, int order,
                          MatrixXd& D, MatrixXd& Z, MatrixXd& T) {
  D.setZero(b.NV, b.NV);
  Z.setZero(b.NV, b.N0);
  T.setZero(b.NV, b.Nb);
  const QuadRule rule = cell_rule(mesh, cell, order);
  for (int q = 0; q < rule.size(); ++q) {
    const Vec3 x = rule.point(q);
    const double w = rule.weights(q);
    for (int i = 0; i < b.NV; ++i) {
      const Vec3 ci = b.chi(i, x);
      Z(i, 0) += w * b.div_chi(i);
      for (int j = i; j < b.NV; ++j) D(i, j) += w * ci.dot(b.chi(j, x));
    }
  }
  D = D.selfadjointView<Eigen::Upper>();
  for (int j = 0; j < b.Nb; ++j) {
    const CellFace cf = mesh.cell_faces[cell][j];
    const Vec3 n_out = double(cf.sign) * mesh.faces[cf.face].normal;
    const QuadRule frule = face_rule(mesh, cf.face, order);
    for (int q = 0; q < frule.size(); ++q)
      for (int i = 0; i < b.NV; ++i)
        T(i, j) += frule.weights(q) * b.chi(i, frule.point(q)).dot(n_out);
  }
}

Eigen::Matrix3d dkinv_closed_triangle(const WGBasis& b) {
  if (b.kind != CellKind::Triangle2D || b.approach != TriangleApproach::I)
    throw std::invalid_argument("dkinv_closed_triangle: needs the Approach I triangle basis");
  const Eigen::Vector3d tinv(1.0 / b.edge[0], 1.0 / b.edge[1], 1.0 / b.edge[2]);
  return tinv.asDiagonal() * triangle_core_matrix(b) * tinv.asDiagonal();
}

MatrixXd dk_inverse(const WGBasis& b, const MatrixXd& D) {
  if (b.kind == CellKind::Triangle2D) {
    if (b.approach == TriangleApproach::I) return dkinv_closed_triangle(b);
    return Eigen::Vector3d(1.0 / D(0, 0), 1.0 / D(1, 1), 1.0 / D(2, 2)).asDiagonal();
  }
  MatrixXd W = MatrixXd::Zero(b.NV, b.NV);
  for (int d = 0; d < b.dim; ++d) {
    const double s = 2.0 / b.volume;
    W(2 * d, 2 * d) = W(2 * d + 1, 2 * d + 1) = 2.0 * s;
    W(2 * d, 2 * d + 1) = W(2 * d + 1, 2 * d) = s;
  }
  return W;
}

VectorXd discrete_gradient(const WGBasis& b, const VectorXd& v0, const VectorXd& vb) {
  if (v0.size() != b.N0 || vb.size() != b.Nb)
    throw std::invalid_argument("discrete_gradient: coefficient sizes do not match the basis");
  MatrixXd D, Z, T;
  local_dzt(b, D, Z, T);
  const VectorXd rhs = -Z * v0 + T * vb;
  if (b.kind == CellKind::Triangle2D && b.approach == TriangleApproach::I) {
    Eigen::FullPivLU<MatrixXd> lu(D);
    if (!lu.isInvertible()) throw std::runtime_error("discrete_gradient: singular D_K");
    return lu.solve(rhs);
  }
  return dk_inverse(b, D) * rhs;
}

void local_abc(const WGBasis& b, const Mesh& mesh, int cell, const Coefficients& coeff,
               int order, MatrixXd& A, MatrixXd& B, MatrixXd& C) {
  A.setZero(b.NV, b.NV);
  B.setZero(b.N0, b.NV);
  C.setZero(b.N0, b.N0);
  const QuadRule rule = cell_rule(mesh, cell, order);
  std::array<Vec3, 6> chi_x;
  for (int q = 0; q < rule.size(); ++q) {
    const Vec3 x = rule.point(q);
    const double w = rule.weights(q);
    for (int i = 0; i < b.NV; ++i) chi_x[i] = b.chi(i, x);
    if (coeff.A) {
      const Eigen::Matrix3d Ax = coeff.A(x);
      for (int j = 0; j < b.NV; ++j) {
        const Vec3 Achi = Ax * chi_x[j];
        for (int i = 0; i < b.NV; ++i) A(i, j) += w * Achi.dot(chi_x[i]);
      }
    } else {
      for (int i = 0; i < b.NV; ++i)
        for (int j = i; j < b.NV; ++j) A(i, j) += w * chi_x[i].dot(chi_x[j]);
    }
    if (coeff.beta) {
      const Vec3 bx = coeff.beta(x);
      for (int j = 0; j < b.NV; ++j) B(0, j) += w * bx.dot(chi_x[j]);
    }
    if (coeff.gamma) C(0, 0) += w * coeff.gamma(x);
  }
  if (!coeff.A) A = A.selfadjointView<Eigen::Upper>();
}

MatrixXd local_stiffness(const MatrixXd& D, const MatrixXd& Z, const MatrixXd& T,
                         const MatrixXd& A, const MatrixXd& B, const MatrixXd& C,
                         const MatrixXd& Dinv) {
  const int N0 = int(Z.cols()), Nb = int(T.cols());
  const MatrixXd G0 = Dinv * Z;           // -grad_d of the interior basis
  const MatrixXd Gb = Dinv * T;           //  grad_d of the face basis
  const MatrixXd AG0 = A * G0, AGb = A * Gb;
  MatrixXd M(N0 + Nb, N0 + Nb);
  M.topLeftCorner(N0, N0) = G0.transpose() * AG0 - B * G0 + C;
  M.topRightCorner(N0, Nb) = -G0.transpose() * AGb + B * Gb;
  M.bottomLeftCorner(Nb, N0) = -Gb.transpose() * AG0;
  M.bottomRightCorner(Nb, Nb) = Gb.transpose() * AGb;
  return M;
}

MatrixXd local_stiffness_direct(const WGBasis& b, const Mesh& mesh, int cell,
                                const Coefficients& coeff, int order) {
  MatrixXd D, Z, T;
  local_dzt_quadrature(b, mesh, cell, order, D, Z, T);
  const MatrixXd Dinv = D.fullPivLu().inverse();
  const MatrixXd G0 = -Dinv * Z;  // grad_d phi_{0,i} columns
  const MatrixXd Gb = Dinv * T;   // grad_d phi_{b,i} columns

  const int n = b.N0 + b.Nb;
  MatrixXd M = MatrixXd::Zero(n, n);
  const QuadRule rule = cell_rule(mesh, cell, order);
  auto grad_col = [&](int k) { return k < b.N0 ? G0.col(k) : Gb.col(k - b.N0); };
  auto interior = [&](int k) { return k < b.N0 ? 1.0 : 0.0; };
  for (int q = 0; q < rule.size(); ++q) {
    const Vec3 x = rule.point(q);
    const double w = rule.weights(q);
    std::array<Vec3, 7> gval;
    for (int k = 0; k < n; ++k) {
      Vec3 g = Vec3::Zero();
      for (int i = 0; i < b.NV; ++i) g += grad_col(k)(i) * b.chi(i, x);
      gval[k] = g;
    }
    const Eigen::Matrix3d Ax = coeff.A ? coeff.A(x) : Eigen::Matrix3d::Identity();
    const Vec3 bx = coeff.beta ? coeff.beta(x) : Vec3::Zero();
    const double gx = coeff.gamma ? coeff.gamma(x) : 0.0;
    for (int i = 0; i < n; ++i)       // test
      for (int j = 0; j < n; ++j)     // trial
        M(i, j) += w * ((Ax * gval[j]).dot(gval[i]) + bx.dot(gval[j]) * interior(i) +
                        gx * interior(j) * interior(i));
  }
  return M;
}

MatrixXd poisson_stiffness_closed_triangle(const WGBasis& b) {
  if (b.kind != CellKind::Triangle2D)
    throw std::invalid_argument("poisson_stiffness_closed_triangle: triangle cells only");
  const auto es = edge_squares(b);
  MatrixXd M(4, 4);
  M(0, 0) = 144.0 * b.volume / es.l123;
  for (int j = 0; j < 3; ++j)
    M(0, 1 + j) = M(1 + j, 0) = -48.0 * b.volume / es.l123;
  M.bottomRightCorner(3, 3) = triangle_core_matrix(b);
  return M;
}

LocalKernel local_kernel(const Mesh& mesh, int cell, const Coefficients& coeff, int order,
                         TriangleApproach approach) {
  const WGBasis b = make_basis(mesh, cell, approach);
  LocalKernel k;
  local_dzt(b, k.D, k.Z, k.T);
  k.Dinv = dk_inverse(b, k.D);
  local_abc(b, mesh, cell, coeff, order, k.A, k.B, k.C);
  k.M = local_stiffness(k.D, k.Z, k.T, k.A, k.B, k.C, k.Dinv);
  return k;
}

}  // namespace wg
