#include "wg/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace wg {

namespace {

void require_order(int order) {
  if (order < 1 || order > 10) throw std::invalid_argument("quadrature: order must be in [1,10]");
}

// Golub-Welsch for the Jacobi weight (1-x)^a (1+x)^b on [-1,1].
void gauss_jacobi(int n, double a, double b, Eigen::VectorXd& x, Eigen::VectorXd& w) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    const double s = 2.0 * k + a + b;
    J(k, k) = (k == 0) ? (b - a) / (a + b + 2.0) : (b * b - a * a) / (s * (s + 2.0));
  }
  for (int k = 1; k < n; ++k) {
    const double s = 2.0 * k + a + b;
    const double num = (k == 1) ? 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + a + b) * (2.0 + a + b) * (3.0 + a + b))
                                : 4.0 * k * (k + a) * (k + b) * (k + a + b) /
                                      (s * s * (s + 1.0) * (s - 1.0));
    J(k, k - 1) = J(k - 1, k) = std::sqrt(num);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  x = es.eigenvalues();
  const double mu0 =
      std::pow(2.0, a + b + 1.0) * std::tgamma(a + 1.0) * std::tgamma(b + 1.0) / std::tgamma(a + b + 2.0);
  w.resize(n);
  for (int k = 0; k < n; ++k) {
    const double v = es.eigenvectors()(0, k);
    w(k) = mu0 * v * v;
  }
}

// Gauss-Legendre nodes and weights on [0,1].
void legendre01(int n, Eigen::VectorXd& x, Eigen::VectorXd& w) {
  gauss_jacobi(n, 0.0, 0.0, x, w);
  x = (x.array() + 1.0) / 2.0;
  w /= 2.0;
}

// Nodes and weights for the weight (1-u) on [0,1].
void jacobi10_01(int n, Eigen::VectorXd& x, Eigen::VectorXd& w) {
  gauss_jacobi(n, 1.0, 0.0, x, w);
  x = (x.array() + 1.0) / 2.0;
  w /= 4.0;
}

}  // namespace

QuadRule segment_rule(int order) {
  require_order(order);
  Eigen::VectorXd x, w;
  legendre01(order, x, w);
  QuadRule r;
  r.points.setZero(order, 3);
  r.points.col(0) = x;
  r.weights = w;
  r.exact_degree = 2 * order - 1;
  return r;
}

QuadRule triangle_rule(int order) {
  require_order(order);
  QuadRule r;
  r.exact_degree = 2 * order - 1;
  if (order == 1) {
    r.points.setZero(1, 3);
    r.points(0, 0) = r.points(0, 1) = 1.0 / 3.0;
    r.weights = Eigen::VectorXd::Constant(1, 0.5);
    return r;
  }
  Eigen::VectorXd u, wu, v, wv;
  jacobi10_01(order, u, wu);  // absorbs the (1-u) Jacobian of the collapse map
  legendre01(order, v, wv);
  const int n = order * order;
  r.points.setZero(3 * n, 3);
  r.weights.resize(3 * n);
  int q = 0;
  for (int i = 0; i < order; ++i) {
    for (int j = 0; j < order; ++j) {
      const double x = u(i), y = (1.0 - u(i)) * v(j);
      const double w = wu(i) * wv(j) / 3.0;
      const double rot[3][2] = {{x, y}, {y, 1.0 - x - y}, {1.0 - x - y, x}};
      for (const auto& p : rot) {
        r.points(q, 0) = p[0];
        r.points(q, 1) = p[1];
        r.weights(q) = w;
        ++q;
      }
    }
  }
  return r;
}

QuadRule tensor_rule(int order, int dim) {
  require_order(order);
  if (dim != 2 && dim != 3) throw std::invalid_argument("tensor_rule: dim must be 2 or 3");
  Eigen::VectorXd x, w;
  legendre01(order, x, w);
  const int n = dim == 2 ? order * order : order * order * order;
  QuadRule r;
  r.points.setZero(n, 3);
  r.weights.resize(n);
  r.exact_degree = 2 * order - 1;
  int q = 0;
  for (int i = 0; i < order; ++i) {
    for (int j = 0; j < order; ++j) {
      if (dim == 2) {
        r.points.row(q) << x(i), x(j), 0.0;
        r.weights(q++) = w(i) * w(j);
      } else {
        for (int k = 0; k < order; ++k) {
          r.points.row(q) << x(i), x(j), x(k);
          r.weights(q++) = w(i) * w(j) * w(k);
        }
      }
    }
  }
  return r;
}

QuadRule cell_rule(const Mesh& mesh, int cell, int order) {
  const Cell& c = mesh.cells[cell];
  QuadRule r;
  switch (c.kind) {
    case CellKind::Triangle2D: {
      const QuadRule ref = triangle_rule(order);
      const Vec3 &p0 = mesh.vertices[c.verts[0]], &p1 = mesh.vertices[c.verts[1]],
                 &p2 = mesh.vertices[c.verts[2]];
      r.points.resize(ref.size(), 3);
      r.weights.resize(ref.size());
      const double jac = 2.0 * c.measure;
      for (int q = 0; q < ref.size(); ++q) {
        const Vec3 X = p0 + ref.points(q, 0) * (p1 - p0) + ref.points(q, 1) * (p2 - p0);
        r.points.row(q) = X.transpose();
        r.weights(q) = ref.weights(q) * jac;
      }
      r.exact_degree = ref.exact_degree;
      return r;
    }
    case CellKind::Rect2D:
    case CellKind::Box3D: {
      const QuadRule ref = tensor_rule(order, mesh.dim);
      r.points.resize(ref.size(), 3);
      r.weights.resize(ref.size());
      for (int q = 0; q < ref.size(); ++q) {
        const Vec3 X = c.corner + ref.point(q).cwiseProduct(c.sides);
        r.points.row(q) = X.transpose();
        r.weights(q) = ref.weights(q) * c.measure;
      }
      r.exact_degree = ref.exact_degree;
      return r;
    }
  }
  throw std::logic_error("cell_rule: unknown cell kind");
}

QuadRule face_rule(const Mesh& mesh, int face, int order) {
  const Face& f = mesh.faces[face];
  QuadRule r;
  if (f.n_verts == 2) {
    const QuadRule ref = segment_rule(order);
    const Vec3 &a = mesh.vertices[f.verts[0]], &b = mesh.vertices[f.verts[1]];
    r.points.resize(ref.size(), 3);
    r.weights.resize(ref.size());
    for (int q = 0; q < ref.size(); ++q) {
      r.points.row(q) = (a + ref.points(q, 0) * (b - a)).transpose();
      r.weights(q) = ref.weights(q) * f.measure;
    }
  } else {
    const QuadRule ref = tensor_rule(order, 2);
    const Vec3 &a = mesh.vertices[f.verts[0]];
    const Vec3 s1 = mesh.vertices[f.verts[1]] - a, s2 = mesh.vertices[f.verts[3]] - a;
    r.points.resize(ref.size(), 3);
    r.weights.resize(ref.size());
    for (int q = 0; q < ref.size(); ++q) {
      r.points.row(q) = (a + ref.points(q, 0) * s1 + ref.points(q, 1) * s2).transpose();
      r.weights(q) = ref.weights(q) * f.measure;
    }
  }
  r.exact_degree = 2 * order - 1;
  return r;
}

}  // namespace wg
