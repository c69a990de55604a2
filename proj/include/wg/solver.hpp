// Iterative (CG, BiCGStab) and dense-LU solution of the assembled systems.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "wg/assembly.hpp"

namespace wg {

enum class SolveMethod { CG, BiCGStab, DenseLU };

struct SolverConfig {
  SolveMethod method = SolveMethod::CG;
  double tol = 1e-12;    // on ||b - Ax|| / ||b||
  int max_iter = 50000;
  bool jacobi = true;
};

struct SolveReport {
  int iterations = 0;
  double rel_residual = 0.0;  // recomputed from the returned solution
  std::vector<double> residual_history;
};

struct SolveFailure : std::runtime_error {
  SolveFailure(const std::string& what, std::vector<double> history)
      : std::runtime_error(what), residual_history(std::move(history)) {}
  std::vector<double> residual_history;
};

// Throws SolveFailure on breakdown or when max_iter is exhausted; never
// returns an unconverged solution.
Eigen::VectorXd solve(const SparseSystem& system, const SolverConfig& config,
                      SolveReport* report = nullptr);

}  // namespace wg
