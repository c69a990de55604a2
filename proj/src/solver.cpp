#include "wg/solver.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace wg {

using Eigen::VectorXd;
using SpMat = Eigen::SparseMatrix<double, Eigen::RowMajor>;

namespace {

void validate(const SparseSystem& sys, const SolverConfig& cfg) {
  if (sys.A.rows() != sys.A.cols()) throw std::invalid_argument("solve: system is not square");
  if (sys.A.rows() != sys.rhs.size()) throw std::invalid_argument("solve: rhs size mismatch");
  if (!(cfg.tol > 0.0 && cfg.tol < 1.0)) throw std::invalid_argument("solve: tol must be in (0,1)");
  if (cfg.max_iter < 1) throw std::invalid_argument("solve: max_iter must be >= 1");
}

void require_symmetric(const SpMat& A) {
  const SpMat diff = SpMat(A - SpMat(A.transpose()));
  double amax = 0.0, dmax = 0.0;
  for (int k = 0; k < A.outerSize(); ++k)
    for (SpMat::InnerIterator it(A, k); it; ++it) amax = std::max(amax, std::abs(it.value()));
  for (int k = 0; k < diff.outerSize(); ++k)
    for (SpMat::InnerIterator it(diff, k); it; ++it) dmax = std::max(dmax, std::abs(it.value()));
  if (dmax > 1e-10 * std::max(amax, 1.0))
    throw std::invalid_argument("solve: CG requested on a nonsymmetric matrix");
}

VectorXd jacobi_weights(const SpMat& A, bool enabled) {
  VectorXd d = VectorXd::Ones(A.rows());
  if (!enabled) return d;
  const VectorXd diag = A.diagonal();
  for (int i = 0; i < d.size(); ++i) d(i) = std::abs(diag(i)) > 0.0 ? 1.0 / diag(i) : 1.0;
  return d;
}

VectorXd cg(const SpMat& A, const VectorXd& b, const SolverConfig& cfg,
            std::vector<double>& history) {
  const double bnorm = b.norm();
  VectorXd x = VectorXd::Zero(b.size());
  if (bnorm == 0.0) return x;
  const VectorXd P = jacobi_weights(A, cfg.jacobi);
  VectorXd r = b;
  VectorXd z = P.cwiseProduct(r);
  VectorXd p = z;
  double rz = r.dot(z);
  for (int it = 0; it < cfg.max_iter; ++it) {
    const VectorXd q = A * p;
    const double pq = p.dot(q);
    if (!(pq > 0.0)) throw SolveFailure("cg: breakdown, matrix not positive definite", history);
    const double alpha = rz / pq;
    x += alpha * p;
    r -= alpha * q;
    const double rel = r.norm() / bnorm;
    history.push_back(rel);
    if (rel < cfg.tol) return x;
    z = P.cwiseProduct(r);
    const double rz_new = r.dot(z);
    p = z + (rz_new / rz) * p;
    rz = rz_new;
  }
  throw SolveFailure("cg: no convergence within max_iter", history);
}

VectorXd bicgstab(const SpMat& A, const VectorXd& b, const SolverConfig& cfg,
                  std::vector<double>& history) {
  const double bnorm = b.norm();
  VectorXd x = VectorXd::Zero(b.size());
  if (bnorm == 0.0) return x;
  const VectorXd P = jacobi_weights(A, cfg.jacobi);
  VectorXd r = b;
  const VectorXd rhat = r;
  double rho = 1.0, alpha = 1.0, omega = 1.0;
  VectorXd v = VectorXd::Zero(b.size());
  VectorXd p = VectorXd::Zero(b.size());
  const double tiny = 1e-300;
  for (int it = 0; it < cfg.max_iter; ++it) {
    const double rho_new = rhat.dot(r);
    if (std::abs(rho_new) < tiny) throw SolveFailure("bicgstab: rho breakdown", history);
    const double beta = (rho_new / rho) * (alpha / omega);
    p = r + beta * (p - omega * v);
    const VectorXd phat = P.cwiseProduct(p);
    v = A * phat;
    const double rv = rhat.dot(v);
    if (std::abs(rv) < tiny) throw SolveFailure("bicgstab: alpha breakdown", history);
    alpha = rho_new / rv;
    const VectorXd s = r - alpha * v;
    if (s.norm() / bnorm < cfg.tol) {
      x += alpha * phat;
      history.push_back((b - A * x).norm() / bnorm);
      return x;
    }
    const VectorXd shat = P.cwiseProduct(s);
    const VectorXd t = A * shat;
    const double tt = t.dot(t);
    if (tt < tiny) throw SolveFailure("bicgstab: omega breakdown", history);
    omega = t.dot(s) / tt;
    x += alpha * phat + omega * shat;
    r = s - omega * t;
    const double rel = r.norm() / bnorm;
    history.push_back(rel);
    if (rel < cfg.tol) return x;
    if (std::abs(omega) < tiny) throw SolveFailure("bicgstab: omega breakdown", history);
    rho = rho_new;
  }
  throw SolveFailure("bicgstab: no convergence within max_iter", history);
}

VectorXd dense_lu(const SpMat& A, const VectorXd& b, std::vector<double>& history) {
  if (A.rows() > 20000)
    throw std::invalid_argument("solve: DenseLU refused for systems this large");
  const Eigen::MatrixXd Ad(A);
  const VectorXd x = Ad.partialPivLu().solve(b);
  history.push_back(b.norm() > 0.0 ? (b - Ad * x).norm() / b.norm() : 0.0);
  return x;
}

}  // namespace

VectorXd solve(const SparseSystem& sys, const SolverConfig& cfg, SolveReport* report) {
  validate(sys, cfg);
  std::vector<double> history;
  VectorXd x;
  switch (cfg.method) {
    case SolveMethod::CG:
      require_symmetric(sys.A);
      x = cg(sys.A, sys.rhs, cfg, history);
      break;
    case SolveMethod::BiCGStab:
      x = bicgstab(sys.A, sys.rhs, cfg, history);
      break;
    case SolveMethod::DenseLU:
      x = dense_lu(sys.A, sys.rhs, history);
      break;
  }
  const double bnorm = sys.rhs.norm();
  const double res = bnorm > 0.0 ? (sys.rhs - sys.A * x).norm() / bnorm : 0.0;
  if (cfg.method != SolveMethod::DenseLU && res > 10.0 * cfg.tol)
    throw SolveFailure("solve: recomputed residual exceeds tolerance", history);
  if (report) {
    report->iterations = int(history.size());
    report->rel_residual = res;
    report->residual_history = std::move(history);
  }
  return x;
}

}  // namespace wg
