#include "wg/assembly.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace wg {

using Eigen::VectorXd;

DofMap build_dofmap(const Mesh& mesh, const ProblemSpec& spec) {
  DofMap dofs;
  dofs.n_cells = int(mesh.cells.size());
  dofs.n_faces = int(mesh.faces.size());
  dofs.face_dirichlet.assign(dofs.n_faces, 0);

  auto is_dirichlet = [&](int tag) {
    const bool robin = spec.is_robin_tag && spec.is_robin_tag(tag);
    const bool diri = spec.is_dirichlet_tag ? spec.is_dirichlet_tag(tag) : !robin;
    if (diri && robin)
      throw std::invalid_argument("build_dofmap: boundary tag assigned to both Gamma_D and Gamma_R");
    if (!diri && !robin)
      throw std::invalid_argument("build_dofmap: boundary face with no Gamma assignment");
    return diri;
  };
  for (int32_t f : mesh.boundary_faces) {
    const int tag = mesh.faces[f].boundary_tag;
    if (tag == kInterior) throw std::invalid_argument("build_dofmap: untagged boundary face");
    dofs.face_dirichlet[f] = is_dirichlet(tag) ? 1 : 0;
  }

  dofs.full_to_free.assign(dofs.n_dofs(), -1);
  dofs.free_to_full.reserve(dofs.n_dofs());
  for (int c = 0; c < dofs.n_cells; ++c) {
    dofs.full_to_free[c] = int32_t(dofs.free_to_full.size());
    dofs.free_to_full.push_back(c);
  }
  for (int f = 0; f < dofs.n_faces; ++f) {
    if (dofs.face_dirichlet[f]) continue;
    dofs.full_to_free[dofs.face_dof(f)] = int32_t(dofs.free_to_full.size());
    dofs.free_to_full.push_back(dofs.face_dof(f));
  }
  return dofs;
}

VectorXd dirichlet_values(const Mesh& mesh, const ProblemSpec& spec, const DofMap& dofs,
                          int order) {
  VectorXd values = VectorXd::Zero(dofs.n_faces);
  if (!spec.dirichlet) return values;
  for (int f = 0; f < dofs.n_faces; ++f) {
    if (!dofs.face_dirichlet[f]) continue;
    if (spec.mode == DirichletMode::NodalInterpolation) {
      values(f) = spec.dirichlet(mesh.faces[f].midpoint);
    } else {
      const QuadRule rule = face_rule(mesh, f, order);
      double s = 0.0;
      for (int q = 0; q < rule.size(); ++q) s += rule.weights(q) * spec.dirichlet(rule.point(q));
      values(f) = s / mesh.faces[f].measure;
    }
  }
  return values;
}

SparseSystem assemble(const Mesh& mesh, const ProblemSpec& spec, int order,
                      TriangleApproach approach) {
  SparseSystem sys;
  sys.dofs = build_dofmap(mesh, spec);
  const DofMap& dofs = sys.dofs;
  const VectorXd gD = dirichlet_values(mesh, spec, dofs, order);

  sys.boundary_values = VectorXd::Zero(dofs.n_dofs());
  for (int f = 0; f < dofs.n_faces; ++f)
    if (dofs.face_dirichlet[f]) sys.boundary_values(dofs.face_dof(f)) = gD(f);

  const int n_free = dofs.n_free();
  sys.rhs = VectorXd::Zero(n_free);
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(size_t(mesh.cells.size()) * 49);

  std::array<int32_t, 7> loc{};
  for (size_t c = 0; c < mesh.cells.size(); ++c) {
    const LocalKernel ker = local_kernel(mesh, int(c), spec.coeff, order, approach);
    const int nf = mesh.faces_per_cell(int(c));
    const int nloc = 1 + nf;
    loc[0] = int32_t(dofs.cell_dof(int(c)));
    for (int q = 0; q < nf; ++q) loc[1 + q] = int32_t(dofs.face_dof(mesh.cell_faces[c][q].face));
    if (!ker.M.allFinite())
      throw std::runtime_error("assemble: local stiffness matrix has non-finite entries");

    for (int i = 0; i < nloc; ++i) {
      const int32_t gi = dofs.full_to_free[loc[i]];
      if (gi < 0) continue;  // constrained rows are eliminated
      for (int j = 0; j < nloc; ++j) {
        const int32_t gj = dofs.full_to_free[loc[j]];
        if (gj >= 0)
          trips.emplace_back(gi, gj, ker.M(i, j));
        else
          sys.rhs(gi) -= ker.M(i, j) * sys.boundary_values(loc[j]);
      }
    }

    if (spec.source) {
      const QuadRule rule = cell_rule(mesh, int(c), order);
      double s = 0.0;
      for (int q = 0; q < rule.size(); ++q) s += rule.weights(q) * spec.source(rule.point(q));
      if (!std::isfinite(s)) throw std::runtime_error("assemble: non-finite source integral");
      sys.rhs(dofs.full_to_free[loc[0]]) += s;
    }
  }

  // Robin faces: <alpha u_b, v_b> on the matrix side, <g^R, v_b> on the rhs
  for (int32_t f : mesh.boundary_faces) {
    if (dofs.face_dirichlet[f]) continue;
    const int32_t g = dofs.full_to_free[dofs.face_dof(f)];
    if (spec.robin_alpha) {
      const QuadRule rule = face_rule(mesh, f, order);
      double a = 0.0;
      for (int q = 0; q < rule.size(); ++q) a += rule.weights(q) * spec.robin_alpha(rule.point(q));
      trips.emplace_back(g, g, a);
    }
    if (spec.robin_data) {
      const QuadRule rule = face_rule(mesh, f, order);
      double r = 0.0;
      for (int q = 0; q < rule.size(); ++q) r += rule.weights(q) * spec.robin_data(rule.point(q));
      sys.rhs(g) += r;
    }
  }

  sys.A.resize(n_free, n_free);
  sys.A.setFromTriplets(trips.begin(), trips.end());
  sys.A.makeCompressed();
  return sys;
}

VectorXd expand_solution(const SparseSystem& sys, const VectorXd& x_free) {
  VectorXd full = sys.boundary_values;
  for (int i = 0; i < sys.dofs.n_free(); ++i) full(sys.dofs.free_to_full[i]) = x_free(i);
  return full;
}

}  // namespace wg
