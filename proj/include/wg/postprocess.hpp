// Projections of exact solutions onto the WG space, the six error metrics
// reported per mesh level, and least-squares convergence rates.
#pragma once

#include <array>
#include <functional>
#include <utility>
#include <vector>

#include "wg/assembly.hpp"

namespace wg {

struct ExactSolution {
  std::function<double(const Vec3&)> u;
  std::function<Vec3(const Vec3&)> grad;
};

// Cell and face averages {Q_0 u, Q_b u}.
struct WGProjection {
  Eigen::VectorXd q0;  // per cell
  Eigen::VectorXd qb;  // per face
};

WGProjection project_exact(const std::function<double(const Vec3&)>& u, const Mesh& mesh,
                           int order = kDefaultOrder);

struct LevelRecord {
  double h = 0.0;
  int level = 0;
  int n_cells = 0;
  int n_dofs = 0;
  double grad_e = 0.0;     // || grad_d (u_h - Q_h u) ||
  double e0 = 0.0;         // || u_0 - Q_0 u ||
  double eb = 0.0;         // face norm of u_b - Q_b u, weighted by the face diameter
  double grad_true = 0.0;  // || grad_d u_h - grad u ||
  double u0_true = 0.0;    // || u_0 - u ||
  double e0_inf = 0.0;     // max of |e_0| over the quadrature points

  std::array<double, 6> metrics() const { return {grad_e, e0, eb, grad_true, u0_true, e0_inf}; }
};

// The six metrics of one solve. `full_solution` has one entry per dof
// (interior first, then faces), boundary values included.
LevelRecord error_norms(const Mesh& mesh, const Eigen::VectorXd& full_solution,
                        const ExactSolution& exact, int order = kDefaultOrder,
                        TriangleApproach approach = TriangleApproach::II);

// Least-squares slope of log(error) against log(h).
double fit_rate(const std::vector<std::pair<double, double>>& levels);

inline constexpr std::array<const char*, 6> kMetricNames = {
    "grad_d_e", "e0", "eb", "grad_d_u-grad_u", "u0-u", "e0_inf"};

struct ErrorReport {
  std::vector<LevelRecord> levels;
  std::array<double, 6> rates{};
  int quad_order = kDefaultOrder;

  void fit_rates();
};

}  // namespace wg
