#include "wg/postprocess.hpp"

#include <cmath>
#include <stdexcept>

namespace wg {

using Eigen::VectorXd;

WGProjection project_exact(const std::function<double(const Vec3&)>& u, const Mesh& mesh,
                           int order) {
  WGProjection p;
  p.q0.resize(mesh.cells.size());
  p.qb.resize(mesh.faces.size());
  for (size_t c = 0; c < mesh.cells.size(); ++c) {
    const QuadRule rule = cell_rule(mesh, int(c), order);
    double s = 0.0;
    for (int q = 0; q < rule.size(); ++q) s += rule.weights(q) * u(rule.point(q));
    p.q0(c) = s / mesh.cells[c].measure;
  }
  for (size_t f = 0; f < mesh.faces.size(); ++f) {
    const QuadRule rule = face_rule(mesh, int(f), order);
    double s = 0.0;
    for (int q = 0; q < rule.size(); ++q) s += rule.weights(q) * u(rule.point(q));
    p.qb(f) = s / mesh.faces[f].measure;
  }
  return p;
}

LevelRecord error_norms(const Mesh& mesh, const VectorXd& full, const ExactSolution& exact,
                        int order, TriangleApproach approach) {
  const int n_cells = int(mesh.cells.size());
  const WGProjection proj = project_exact(exact.u, mesh, order);

  LevelRecord rec;
  rec.h = mesh.h;
  rec.n_cells = n_cells;
  rec.n_dofs = int(full.size());

  double grad_e2 = 0.0, e02 = 0.0, grad_true2 = 0.0, u0_true2 = 0.0;
  Eigen::MatrixXd D, Z, T;
  for (int c = 0; c < n_cells; ++c) {
    const WGBasis basis = make_basis(mesh, c, approach);
    local_dzt(basis, D, Z, T);
    const Eigen::MatrixXd Dinv = dk_inverse(basis, D);

    const int nf = mesh.faces_per_cell(c);
    VectorXd ub(nf), qb(nf);
    for (int q = 0; q < nf; ++q) {
      const int f = mesh.cell_faces[c][q].face;
      ub(q) = full(n_cells + f);
      qb(q) = proj.qb(f);
    }
    const double e0 = full(c) - proj.q0(c);
    e02 += mesh.cells[c].measure * e0 * e0;
    rec.e0_inf = std::max(rec.e0_inf, std::abs(e0));

    const VectorXd ge = Dinv * (-Z * VectorXd::Constant(1, e0) + T * (ub - qb));
    grad_e2 += ge.dot(D * ge);

    const VectorXd gu = Dinv * (-Z * VectorXd::Constant(1, full(c)) + T * ub);
    const QuadRule rule = cell_rule(mesh, c, order);
    for (int q = 0; q < rule.size(); ++q) {
      const Vec3 x = rule.point(q);
      const double w = rule.weights(q);
      Vec3 gh = Vec3::Zero();
      for (int i = 0; i < basis.NV; ++i) gh += gu(i) * basis.chi(i, x);
      if (exact.grad) grad_true2 += w * (gh - exact.grad(x)).squaredNorm();
      const double du = full(c) - exact.u(x);
      u0_true2 += w * du * du;
    }
  }

  double eb2 = 0.0;
  for (size_t f = 0; f < mesh.faces.size(); ++f) {
    const double eb = full(n_cells + int(f)) - proj.qb(f);
    eb2 += mesh.faces[f].diameter * mesh.faces[f].measure * eb * eb;
  }

  rec.grad_e = std::sqrt(grad_e2);
  rec.e0 = std::sqrt(e02);
  rec.eb = std::sqrt(eb2);
  rec.grad_true = std::sqrt(grad_true2);
  rec.u0_true = std::sqrt(u0_true2);
  return rec;
}

double fit_rate(const std::vector<std::pair<double, double>>& levels) {
  if (levels.size() < 2) throw std::invalid_argument("fit_rate: need at least two levels");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [h, err] : levels) {
    if (!(h > 0.0) || !(err > 0.0))
      throw std::invalid_argument("fit_rate: levels must have positive h and error");
    const double x = std::log(h), y = std::log(err);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = double(levels.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

void ErrorReport::fit_rates() {
  for (int m = 0; m < 6; ++m) {
    std::vector<std::pair<double, double>> pts;
    pts.reserve(levels.size());
    for (const LevelRecord& r : levels) pts.emplace_back(r.h, r.metrics()[m]);
    rates[m] = fit_rate(pts);
  }
}

}  // namespace wg
