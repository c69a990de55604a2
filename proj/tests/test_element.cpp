#include <doctest.h>

#include <Eigen/SVD>
#include <random>

#include "test_util.hpp"
#include "wg/element.hpp"

using namespace wg;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

Mesh unit_right_triangle() {
  Mesh m;
  std::mt19937 rng(1);
  m = wg::test::random_triangle(rng);
  m.vertices = {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0)};
  m.cells[0].measure = 0.5;
  m.cells[0].diameter = std::sqrt(2.0);
  for (int i = 0; i < 3; ++i) {
    const Vec3 &pj = m.vertices[(i + 1) % 3], &pk = m.vertices[(i + 2) % 3];
    Face& f = m.faces[i];
    f.measure = (pk - pj).norm();
    f.diameter = f.measure;
    f.midpoint = 0.5 * (pj + pk);
    f.normal = Vec3(pk.y() - pj.y(), pj.x() - pk.x(), 0.0) / f.measure;
  }
  return m;
}

// local projection {Q_0 w, Q_b w} on one cell
void project_local(const Mesh& m, int cell, const std::function<double(const Vec3&)>& w,
                   VectorXd& q0, VectorXd& qb) {
  const QuadRule rule = cell_rule(m, cell, 6);
  double s = 0.0;
  for (int q = 0; q < rule.size(); ++q) s += rule.weights(q) * w(rule.point(q));
  q0 = VectorXd::Constant(1, s / m.cells[cell].measure);
  const int nf = m.faces_per_cell(cell);
  qb.resize(nf);
  for (int j = 0; j < nf; ++j) {
    const int f = m.cell_faces[cell][j].face;
    const QuadRule fr = face_rule(m, f, 6);
    double t = 0.0;
    for (int q = 0; q < fr.size(); ++q) t += fr.weights(q) * w(fr.point(q));
    qb(j) = t / m.faces[f].measure;
  }
}

double rel_err(const MatrixXd& got, const MatrixXd& want) {
  const double scale = std::max(1e-30, want.norm());
  return (got - want).norm() / scale;
}

}  // namespace

TEST_CASE("approach I basis: chi_i . n_j = delta_ij on edge j") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Mesh m = wg::test::random_triangle(rng);
    const WGBasis b = basis_triangle_rt0(m, 0, TriangleApproach::I);
    for (int j = 0; j < 3; ++j) {
      const Vec3 &pj = b.tri_v[(j + 1) % 3], &pk = b.tri_v[(j + 2) % 3];
      for (double t : {0.2, 0.7}) {
        const Vec3 x = pj + t * (pk - pj);
        for (int i = 0; i < 3; ++i)
          CHECK(b.chi(i, x).dot(b.normal[j]) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("approach II: D_K = |K| diag(1, 1, l123/36) on any triangle") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const Mesh m = wg::test::random_triangle(rng);
    const WGBasis b = basis_triangle_rt0(m, 0, TriangleApproach::II);
    MatrixXd D, Z, T, Dq, Zq, Tq;
    local_dzt(b, D, Z, T);
    local_dzt_quadrature(b, m, 0, 5, Dq, Zq, Tq);
    CHECK(rel_err(D, Dq) < 1e-12);
    const double l123 =
        b.edge[0] * b.edge[0] + b.edge[1] * b.edge[1] + b.edge[2] * b.edge[2];
    CHECK(D(2, 2) == doctest::Approx(b.volume * l123 / 36).epsilon(1e-13));
    CHECK(D(0, 1) == 0.0);
  }
}

TEST_CASE("unit right triangle barycenter") {
  const Mesh m = unit_right_triangle();
  const WGBasis b = basis_triangle_rt0(m, 0, TriangleApproach::II);
  CHECK(b.barycenter.x() == doctest::Approx(1.0 / 3));
  CHECK(b.barycenter.y() == doctest::Approx(1.0 / 3));
}

TEST_CASE("degenerate triangle is rejected") {
  Mesh m = unit_right_triangle();
  m.cells[0].measure = 0.0;
  CHECK_THROWS_AS((void)basis_triangle_rt0(m, 0, TriangleApproach::I), std::invalid_argument);
}

TEST_CASE("cube element: D_K and its inverse match the closed pattern") {
  const Mesh m = uniform_box3d(1);
  const WGBasis b = basis_box_rt0(m, 0);
  MatrixXd D, Z, T;
  local_dzt(b, D, Z, T);

  MatrixXd Dref = MatrixXd::Zero(6, 6);
  for (int d = 0; d < 3; ++d) {
    Dref(2 * d, 2 * d) = Dref(2 * d + 1, 2 * d + 1) = 2.0 / 6.0;
    Dref(2 * d, 2 * d + 1) = Dref(2 * d + 1, 2 * d) = -1.0 / 6.0;
  }
  CHECK(rel_err(D, Dref) < 1e-14);

  const MatrixXd Dinv = dk_inverse(b, D);
  MatrixXd Iref = MatrixXd::Zero(6, 6);
  for (int d = 0; d < 3; ++d) {
    Iref(2 * d, 2 * d) = Iref(2 * d + 1, 2 * d + 1) = 2.0 * 2.0;
    Iref(2 * d, 2 * d + 1) = Iref(2 * d + 1, 2 * d) = 2.0 * 1.0;
  }
  CHECK(rel_err(Dinv, Iref) < 1e-14);
  CHECK(rel_err(D * Dinv, MatrixXd::Identity(6, 6)) < 1e-13);

  CHECK(rel_err(Z, VectorXd::Ones(6)) < 1e-14);
  CHECK(rel_err(T, MatrixXd::Identity(6, 6)) < 1e-14);
}

TEST_CASE("unit square element: Z and T") {
  const Mesh m = uniform_rect2d(1);
  const WGBasis b = basis_box_rt0(m, 0);
  MatrixXd D, Z, T;
  local_dzt(b, D, Z, T);
  CHECK(rel_err(Z, VectorXd::Ones(4)) < 1e-14);
  CHECK(rel_err(T, MatrixXd::Identity(4, 4)) < 1e-14);
}

TEST_CASE("approach I: Z, T and the closed-form D on the unit right triangle") {
  const Mesh m = unit_right_triangle();
  const WGBasis b = basis_triangle_rt0(m, 0, TriangleApproach::I);
  MatrixXd D, Z, T;
  local_dzt(b, D, Z, T);
  for (int i = 0; i < 3; ++i) {
    CHECK(Z(i, 0) == doctest::Approx(b.edge[i]).epsilon(1e-14));
    CHECK(T(i, i) == doctest::Approx(b.edge[i]).epsilon(1e-14));
  }
  MatrixXd Dq, Zq, Tq;
  local_dzt_quadrature(b, m, 0, 5, Dq, Zq, Tq);
  CHECK(rel_err(D, Dq) < 1e-13);
  CHECK(rel_err(Z, Zq) < 1e-13);
  CHECK(rel_err(T, Tq) < 1e-13);
  // l1 = 2, l2 = l3 = 1, |K| = 1/2: D(0,0) = 8/24
  CHECK(D(0, 0) == doctest::Approx(1.0 / 3).epsilon(1e-13));
}

TEST_CASE("closed D_K^{-1}: product with D_K is the identity (100 random triangles)") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const Mesh m = wg::test::random_triangle(rng);
    const WGBasis b = basis_triangle_rt0(m, 0, TriangleApproach::I);
    MatrixXd D, Z, T;
    local_dzt(b, D, Z, T);
    const Eigen::Matrix3d Dinv = dkinv_closed_triangle(b);
    CHECK(rel_err(D * Dinv, MatrixXd::Identity(3, 3)) < 1e-11);
    CHECK(rel_err(Dinv, D.fullPivLu().inverse()) < 1e-11);  // LU oracle
  }
}

TEST_CASE("closed D_K^{-1} is symmetric on the equilateral triangle") {
  Mesh m = unit_right_triangle();
  m.vertices = {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0.5, std::sqrt(3.0) / 2.0, 0)};
  m.cells[0].measure = std::sqrt(3.0) / 4.0;
  const WGBasis b = basis_triangle_rt0(m, 0, TriangleApproach::I);
  const Eigen::Matrix3d Dinv = dkinv_closed_triangle(b);
  CHECK((Dinv - Dinv.transpose()).norm() < 1e-12 * Dinv.norm());
}

TEST_CASE("discrete gradient: constants have zero gradient") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const Mesh m = wg::test::random_triangle(rng);
    for (TriangleApproach ap : {TriangleApproach::I, TriangleApproach::II}) {
      const WGBasis b = basis_triangle_rt0(m, 0, ap);
      const VectorXd g = discrete_gradient(b, VectorXd::Constant(1, 3.25),
                                           VectorXd::Constant(3, 3.25));
      CHECK(g.norm() < 1e-12);
    }
  }
}

TEST_CASE("discrete gradient of the interior basis function, approach II") {
  std::mt19937 rng(29);
  const Mesh m = wg::test::random_triangle(rng);
  const WGBasis b = basis_triangle_rt0(m, 0, TriangleApproach::II);
  const double l123 = b.edge[0] * b.edge[0] + b.edge[1] * b.edge[1] + b.edge[2] * b.edge[2];
  const VectorXd g = discrete_gradient(b, VectorXd::Constant(1, 1.0), VectorXd::Zero(3));
  CHECK(g(0) == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(g(1) == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(g(2) == doctest::Approx(-72.0 / l123).epsilon(1e-12));
}

TEST_CASE("discrete gradient reproduces grad(x) for w = x") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const Mesh m = wg::test::random_triangle(rng);
    const WGBasis b = basis_triangle_rt0(m, 0, TriangleApproach::II);
    VectorXd q0, qb;
    project_local(m, 0, [](const Vec3& p) { return p.x(); }, q0, qb);
    const VectorXd g = discrete_gradient(b, q0, qb);
    // coefficients (1, 0, 0) in the approach II basis represent the field (1,0)
    CHECK(g(0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(g(1)) < 1e-12);
    CHECK(std::abs(g(2)) < 1e-12);
  }
}

TEST_CASE("P2: grad_d of the projection is the L2 projection of the gradient") {
  std::mt19937 rng(37);
  using F = std::function<double(const Vec3&)>;
  using G = std::function<Vec3(const Vec3&)>;
  const std::vector<std::pair<F, G>> wset = {
      {[](const Vec3&) { return 1.0; }, [](const Vec3&) { return Vec3(0, 0, 0); }},
      {[](const Vec3& p) { return p.x(); }, [](const Vec3&) { return Vec3(1, 0, 0); }},
      {[](const Vec3& p) { return p.y(); }, [](const Vec3&) { return Vec3(0, 1, 0); }},
      {[](const Vec3& p) { return p.x() * p.y(); },
       [](const Vec3& p) { return Vec3(p.y(), p.x(), 0); }},
      {[](const Vec3& p) { return p.x() * p.x(); },
       [](const Vec3& p) { return Vec3(2 * p.x(), 0, 0); }},
  };
  auto check_cell = [&](const Mesh& m, const WGBasis& b) {
    MatrixXd D, Z, T;
    local_dzt(b, D, Z, T);
    for (const auto& [w, gw] : wset) {
      VectorXd q0, qb;
      project_local(m, 0, w, q0, qb);
      const VectorXd got = discrete_gradient(b, q0, qb);
      // L2 projection of grad w onto V_r(K): solve D c = (grad w, chi_i)
      const QuadRule rule = cell_rule(m, 0, 6);
      VectorXd rhs = VectorXd::Zero(b.NV);
      for (int q = 0; q < rule.size(); ++q)
        for (int i = 0; i < b.NV; ++i)
          rhs(i) += rule.weights(q) * gw(rule.point(q)).dot(b.chi(i, rule.point(q)));
      const VectorXd want = MatrixXd(D).fullPivLu().solve(rhs);
      CHECK((got - want).norm() < 1e-12 * std::max(1.0, want.norm()));
    }
  };
  for (int trial = 0; trial < 25; ++trial) {
    const Mesh tri = wg::test::random_triangle(rng);
    check_cell(tri, basis_triangle_rt0(tri, 0, TriangleApproach::I));
    check_cell(tri, basis_triangle_rt0(tri, 0, TriangleApproach::II));
    const Mesh rect = wg::test::random_box(rng, 2);
    check_cell(rect, basis_box_rt0(rect, 0));
    const Mesh box = wg::test::random_box(rng, 3);
    check_cell(box, basis_box_rt0(box, 0));
  }
  // and w = z on boxes
  const Mesh box = wg::test::random_box(rng, 3);
  const WGBasis b = basis_box_rt0(box, 0);
  VectorXd q0, qb;
  project_local(box, 0, [](const Vec3& p) { return p.z(); }, q0, qb);
  const VectorXd g = discrete_gradient(b, q0, qb);
  MatrixXd D, Z, T;
  local_dzt(b, D, Z, T);
  VectorXd want = VectorXd::Zero(6);
  want(4) = want(5) = 1.0;  // (0,0,1) = chi_5 + chi_6
  CHECK((g - want).norm() < 1e-12);
}

TEST_CASE("P1: the kernel of the local gradient map is exactly the constants") {
  std::mt19937 rng(41);
  auto check_kernel = [](const Mesh& m, const WGBasis& b) {
    MatrixXd D, Z, T;
    local_dzt(b, D, Z, T);
    const MatrixXd Dinv = dk_inverse(b, D);
    MatrixXd G(b.NV, 1 + b.Nb);
    G.leftCols(1) = -Dinv * Z;
    G.rightCols(b.Nb) = Dinv * T;
    Eigen::JacobiSVD<MatrixXd> svd(G, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    // rank N0+Nb-1: exactly one vanishing singular value
    CHECK(sv(sv.size() - 1) < 1e-12 * sv(0));
    CHECK(sv(sv.size() - 2) > 1e-8 * sv(0));
    // and the null vector is the all-ones direction
    VectorXd null = svd.matrixV().col(sv.size() - 1);
    null /= null(0);
    CHECK((null - VectorXd::Ones(null.size())).norm() < 1e-10);
  };
  for (int trial = 0; trial < 30; ++trial) {
    const Mesh tri = wg::test::random_triangle(rng);
    check_kernel(tri, basis_triangle_rt0(tri, 0, TriangleApproach::I));
    check_kernel(tri, basis_triangle_rt0(tri, 0, TriangleApproach::II));
    const Mesh rect = wg::test::random_box(rng, 2);
    check_kernel(rect, basis_box_rt0(rect, 0));
    const Mesh box = wg::test::random_box(rng, 3);
    check_kernel(box, basis_box_rt0(box, 0));
  }
}

TEST_CASE("local_abc: identity and constant coefficients") {
  std::mt19937 rng(43);
  const Mesh m = wg::test::random_triangle(rng);
  const WGBasis b = basis_triangle_rt0(m, 0, TriangleApproach::II);
  MatrixXd D, Z, T, A, B, C;
  local_dzt(b, D, Z, T);

  Coefficients laplace;  // A = I, beta = 0, gamma = 0
  local_abc(b, m, 0, laplace, 5, A, B, C);
  CHECK(rel_err(A, D) < 1e-13);
  CHECK(B.norm() == 0.0);
  CHECK(C.norm() == 0.0);

  Coefficients reaction;
  reaction.gamma = [](const Vec3&) { return 1.0; };
  local_abc(b, m, 0, reaction, 5, A, B, C);
  CHECK(C(0, 0) == doctest::Approx(m.cells[0].measure).epsilon(1e-13));

  Coefficients convection;
  convection.beta = [](const Vec3&) { return Vec3(1, 0, 0); };
  local_abc(b, m, 0, convection, 5, A, B, C);
  CHECK(B(0, 0) == doctest::Approx(m.cells[0].measure).epsilon(1e-13));
  CHECK(std::abs(B(0, 1)) < 1e-14);
  CHECK(std::abs(B(0, 2)) < 1e-14);
}

TEST_CASE("poisson stiffness: closed blocks match the algebraic formula") {
  std::mt19937 rng(47);
  for (int trial = 0; trial < 50; ++trial) {
    const Mesh m = wg::test::random_triangle(rng);
    const WGBasis b = basis_triangle_rt0(m, 0, TriangleApproach::II);
    const LocalKernel k = local_kernel(m, 0, Coefficients{}, 5, TriangleApproach::II);
    const MatrixXd closed = poisson_stiffness_closed_triangle(b);
    CHECK(rel_err(k.M, closed) < 1e-12);

    const double l123 = b.edge[0] * b.edge[0] + b.edge[1] * b.edge[1] + b.edge[2] * b.edge[2];
    CHECK(closed(0, 0) == doctest::Approx(144.0 * b.volume / l123).epsilon(1e-13));
    for (int j = 1; j < 4; ++j)
      CHECK(closed(0, j) == doctest::Approx(-48.0 * b.volume / l123).epsilon(1e-13));
  }
}

TEST_CASE("approach I and II give identical local stiffness matrices") {
  std::mt19937 rng(53);
  Coefficients coeff;
  coeff.A = [](const Vec3& p) {
    Eigen::Matrix3d A = Eigen::Matrix3d::Identity();
    A(0, 0) = 2.0 + std::sin(p.x());
    A(0, 1) = A(1, 0) = 0.25 * p.y();
    A(1, 1) = 1.5 + 0.5 * std::cos(p.y());
    return A;
  };
  coeff.beta = [](const Vec3& p) { return Vec3(p.y(), -p.x(), 0); };
  coeff.gamma = [](const Vec3& p) { return 1.0 + p.x() * p.x(); };
  for (int trial = 0; trial < 100; ++trial) {
    const Mesh m = wg::test::random_triangle(rng);
    const LocalKernel k1 = local_kernel(m, 0, coeff, 6, TriangleApproach::I);
    const LocalKernel k2 = local_kernel(m, 0, coeff, 6, TriangleApproach::II);
    CHECK(rel_err(k1.M, k2.M) < 1e-11);
  }
}

TEST_CASE("M_K matches the direct quadrature evaluation of the bilinear form") {
  std::mt19937 rng(59);
  Coefficients coeff;
  coeff.A = [](const Vec3& p) {
    Eigen::Matrix3d A = Eigen::Matrix3d::Identity();
    A(0, 0) = 1.0 + p.x() * p.x();
    A(1, 1) = 2.0;
    A(2, 2) = 1.0 + p.z() * p.z();
    return A;
  };
  coeff.beta = [](const Vec3& p) { return Vec3(1.0, p.x(), 0.5 * p.y()); };
  coeff.gamma = [](const Vec3& p) { return 0.5 + p.y() * p.y(); };
  for (int trial = 0; trial < 20; ++trial) {
    const Mesh tri = wg::test::random_triangle(rng);
    for (TriangleApproach ap : {TriangleApproach::I, TriangleApproach::II}) {
      const LocalKernel k = local_kernel(tri, 0, coeff, 6, ap);
      const MatrixXd direct =
          local_stiffness_direct(make_basis(tri, 0, ap), tri, 0, coeff, 6);
      CHECK(rel_err(k.M, direct) < 1e-12);
    }
    const Mesh rect = wg::test::random_box(rng, 2);
    CHECK(rel_err(local_kernel(rect, 0, coeff, 6).M,
                  local_stiffness_direct(make_basis(rect, 0), rect, 0, coeff, 6)) < 1e-12);
    const Mesh box = wg::test::random_box(rng, 3);
    CHECK(rel_err(local_kernel(box, 0, coeff, 6).M,
                  local_stiffness_direct(make_basis(box, 0), box, 0, coeff, 6)) < 1e-12);
  }
}

TEST_CASE("symmetric problems give symmetric PSD M_K with constant null space") {
  std::mt19937 rng(61);
  Coefficients coeff;
  coeff.A = [](const Vec3& p) {
    Eigen::Matrix3d A = Eigen::Matrix3d::Identity();
    A(0, 0) = 1.0 + 0.5 * std::sin(p.x() + p.y());
    return A;
  };
  for (int trial = 0; trial < 20; ++trial) {
    const Mesh m = wg::test::random_triangle(rng);
    const LocalKernel k = local_kernel(m, 0, coeff, 6);
    CHECK((k.M - k.M.transpose()).norm() < 1e-12 * k.M.norm());
    CHECK((k.M * VectorXd::Ones(4)).norm() < 1e-12 * k.M.norm());
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (k.M + k.M.transpose()));
    CHECK(es.eigenvalues().minCoeff() > -1e-12 * k.M.norm());
  }
}

TEST_CASE("Z_K equals T_K times ones at order zero") {
  // divergence theorem applied to phi_0 = 1
  std::mt19937 rng(67);
  for (int trial = 0; trial < 10; ++trial) {
    for (const Mesh& m : {wg::test::random_triangle(rng), wg::test::random_box(rng, 2),
                          wg::test::random_box(rng, 3)}) {
      const WGBasis b = make_basis(m, 0);
      MatrixXd D, Z, T;
      local_dzt(b, D, Z, T);
      CHECK((Z - T * VectorXd::Ones(b.Nb)).norm() < 1e-12 * std::max(1.0, Z.norm()));
    }
  }
}
