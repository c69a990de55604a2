// Global degree-of-freedom map, sparse assembly of the weak Galerkin system
// and Dirichlet/Robin boundary treatment.
#pragma once

#include <Eigen/Sparse>

#include <functional>

#include "wg/element.hpp"
#include "wg/mesh.hpp"

namespace wg {

enum class DirichletMode {
  NodalInterpolation,  // face value = g at the face midpoint
  L2Projection,        // face value = mean of g over the face
};

struct ProblemSpec {
  Coefficients coeff;
  std::function<double(const Vec3&)> source;       // f
  std::function<double(const Vec3&)> dirichlet;    // g^D on Gamma_D
  std::function<double(const Vec3&)> robin_alpha;  // alpha >= 0 on Gamma_R; null = 0
  std::function<double(const Vec3&)> robin_data;   // g^R on Gamma_R; null = 0
  // Boundary partition by face tag. Defaults: everything Dirichlet.
  std::function<bool(int)> is_dirichlet_tag;
  std::function<bool(int)> is_robin_tag;
  DirichletMode mode = DirichletMode::L2Projection;

  bool symmetric() const { return !coeff.beta; }
};

// Interior dofs come first (one per cell at order 0), then one dof per face.
struct DofMap {
  int n_cells = 0;
  int n_faces = 0;
  std::vector<int32_t> full_to_free;  // -1 for Dirichlet-constrained face dofs
  std::vector<int32_t> free_to_full;
  std::vector<uint8_t> face_dirichlet;

  int cell_dof(int c) const { return c; }
  int face_dof(int f) const { return n_cells + f; }
  int n_dofs() const { return n_cells + n_faces; }
  int n_free() const { return int(free_to_full.size()); }
};

DofMap build_dofmap(const Mesh& mesh, const ProblemSpec& spec);

// Values for the constrained face dofs; entries of non-Dirichlet faces are 0.
Eigen::VectorXd dirichlet_values(const Mesh& mesh, const ProblemSpec& spec, const DofMap& dofs,
                                 int order = kDefaultOrder);

struct SparseSystem {
  Eigen::SparseMatrix<double, Eigen::RowMajor> A;  // CSR over the free dofs
  Eigen::VectorXd rhs;
  DofMap dofs;
  Eigen::VectorXd boundary_values;  // full-length; Dirichlet entries filled
};

// Sum of scattered M_K blocks plus Robin face terms; Dirichlet dofs are
// eliminated and their columns moved to the right-hand side.
SparseSystem assemble(const Mesh& mesh, const ProblemSpec& spec, int order = kDefaultOrder,
                      TriangleApproach approach = TriangleApproach::II);

// Full-length solution vector: boundary values plus the free solution.
Eigen::VectorXd expand_solution(const SparseSystem& system, const Eigen::VectorXd& x_free);

}  // namespace wg
