#include <doctest.h>

#include <random>

#include "test_util.hpp"
#include "wg/quadrature.hpp"

using namespace wg;
using wg::test::seg_monomial;
using wg::test::tri_monomial;

namespace {

double apply(const QuadRule& r, const std::function<double(const Vec3&)>& f) {
  double s = 0.0;
  for (int q = 0; q < r.size(); ++q) s += r.weights(q) * f(r.point(q));
  return s;
}

}  // namespace

TEST_CASE("segment rule basics") {
  const QuadRule r1 = segment_rule(1);
  REQUIRE(r1.size() == 1);
  CHECK(r1.points(0, 0) == doctest::Approx(0.5));
  CHECK(r1.weights(0) == doctest::Approx(1.0));

  const QuadRule r3 = segment_rule(3);
  CHECK(apply(r3, [](const Vec3& p) { return std::pow(p.x(), 5); }) ==
        doctest::Approx(1.0 / 6).epsilon(1e-15));
  CHECK(r3.weights.sum() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("triangle rule basics") {
  const QuadRule r1 = triangle_rule(1);
  REQUIRE(r1.size() == 1);
  CHECK(r1.points(0, 0) == doctest::Approx(1.0 / 3));
  CHECK(r1.points(0, 1) == doctest::Approx(1.0 / 3));
  CHECK(r1.weights(0) == doctest::Approx(0.5));

  const QuadRule r3 = triangle_rule(3);
  CHECK(apply(r3, [](const Vec3& p) { return p.x() * p.x() * p.y() * p.y(); }) ==
        doctest::Approx(1.0 / 180).epsilon(1e-14));
  for (int q = 0; q < r3.size(); ++q) CHECK(r3.weights(q) > 0.0);
  CHECK(r3.weights.sum() == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("tensor rule basics") {
  CHECK(tensor_rule(2, 2).size() == 4);
  const QuadRule r = tensor_rule(2, 2);
  CHECK(apply(r, [](const Vec3& p) { return std::pow(p.x(), 3) * std::pow(p.y(), 3); }) ==
        doctest::Approx(1.0 / 16).epsilon(1e-15));
  const QuadRule r3 = tensor_rule(2, 3);
  CHECK(r3.size() == 8);
  CHECK(r3.weights.sum() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("rules reject out-of-range orders") {
  CHECK_THROWS_AS((void)segment_rule(0), std::invalid_argument);
  CHECK_THROWS_AS((void)segment_rule(11), std::invalid_argument);
  CHECK_THROWS_AS((void)triangle_rule(0), std::invalid_argument);
  CHECK_THROWS_AS((void)tensor_rule(3, 4), std::invalid_argument);
}

TEST_CASE("exactness against symbolic monomial integrals") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  for (int order = 1; order <= 6; ++order) {
    const QuadRule tri = triangle_rule(order);
    const QuadRule seg = segment_rule(order);
    const QuadRule sq = tensor_rule(order, 2);

    // random polynomial of the rule's exact degree
    for (int trial = 0; trial < 5; ++trial) {
      double exact_tri = 0.0, exact_seg = 0.0, exact_sq = 0.0;
      std::vector<std::array<double, 3>> terms;  // (cpq, p, q)
      for (int p = 0; p <= tri.exact_degree; ++p) {
        for (int q = 0; p + q <= tri.exact_degree; ++q) {
          const double cpq = coef(rng);
          terms.push_back({cpq, double(p), double(q)});
          exact_tri += cpq * tri_monomial(p, q);
          if (q == 0) exact_seg += cpq * seg_monomial(p);
          exact_sq += cpq * seg_monomial(p) * seg_monomial(q);
        }
      }
      auto poly = [&terms](const Vec3& pt) {
        double s = 0.0;
        for (const auto& t : terms) s += t[0] * std::pow(pt.x(), t[1]) * std::pow(pt.y(), t[2]);
        return s;
      };
      CHECK(apply(tri, poly) == doctest::Approx(exact_tri).epsilon(1e-13));
      CHECK(apply(sq, poly) == doctest::Approx(exact_sq).epsilon(1e-13));
      CHECK(apply(seg, poly) == doctest::Approx(exact_seg).epsilon(1e-13));
    }
  }
}

TEST_CASE("triangle rule is symmetric under rotation of barycentric coordinates") {
  const QuadRule r = triangle_rule(4);
  // integrating f(x,y) and f(y, 1-x-y) must agree exactly for a symmetric rule
  auto f = [](const Vec3& p) { return std::exp(p.x()) * p.y(); };
  auto f_rot = [](const Vec3& p) { return std::exp(p.y()) * (1.0 - p.x() - p.y()); };
  CHECK(apply(r, f) == doctest::Approx(apply(r, f_rot)).epsilon(1e-15));
}

TEST_CASE("mapped rules keep exactness on physical cells") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  const double c0 = coef(rng), c1 = coef(rng), c2 = coef(rng);
  auto poly = [&](const Vec3& p) { return c0 + c1 * p.x() * p.y() + c2 * p.y() * p.y(); };

  for (int trial = 0; trial < 20; ++trial) {
    const Mesh tri = wg::test::random_triangle(rng);
    // oracle: map the reference monomial integrals through the affine map
    const QuadRule fine = cell_rule(tri, 0, 9);
    const QuadRule coarse = cell_rule(tri, 0, 2);  // degree 3 >= poly degree 2
    CHECK(apply(coarse, poly) == doctest::Approx(apply(fine, poly)).epsilon(1e-13));
    CHECK(coarse.weights.sum() == doctest::Approx(tri.cells[0].measure).epsilon(1e-13));
  }
  for (int dim : {2, 3}) {
    for (int trial = 0; trial < 10; ++trial) {
      const Mesh box = wg::test::random_box(rng, dim);
      const QuadRule fine = cell_rule(box, 0, 9);
      const QuadRule coarse = cell_rule(box, 0, 2);
      CHECK(apply(coarse, poly) == doctest::Approx(apply(fine, poly)).epsilon(1e-13));
      CHECK(coarse.weights.sum() == doctest::Approx(box.cells[0].measure).epsilon(1e-13));
    }
  }
}

TEST_CASE("face rules integrate over edges and box faces") {
  const Mesh m2 = uniform_triangular(2);
  for (size_t f = 0; f < m2.faces.size(); ++f) {
    const QuadRule r = face_rule(m2, int(f), 4);
    CHECK(r.weights.sum() == doctest::Approx(m2.faces[f].measure).epsilon(1e-14));
  }
  const Mesh m3 = uniform_box3d(2);
  const QuadRule r = face_rule(m3, 0, 3);
  CHECK(r.weights.sum() == doctest::Approx(0.25).epsilon(1e-14));
  // the mapped points stay inside the face plane
  for (int q = 0; q < r.size(); ++q)
    CHECK(std::abs((r.point(q) - m3.faces[0].midpoint).dot(m3.faces[0].normal)) < 1e-14);
}
