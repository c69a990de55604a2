#include "wg/cases.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <stdexcept>

#include "wg/expr.hpp"

namespace wg {

namespace {

constexpr double kPi = 3.14159265358979323846;

Eigen::Matrix3d scaled_identity(double s) {
  return s * Eigen::Matrix3d::Identity();
}

}  // namespace

namespace kellogg {

double rho() { return kPi / 4.0; }

double mu(double theta) {
  double t = theta;
  if (t < 0.0) t += 2.0 * kPi;
  const double g = kGamma, s = kSigma, r = rho();
  if (t <= kPi / 2.0) return std::cos((kPi / 2.0 - s) * g) * std::cos((t - kPi / 2.0 + r) * g);
  if (t <= kPi) return std::cos(r * g) * std::cos((t - kPi + s) * g);
  if (t <= 1.5 * kPi) return std::cos(s * g) * std::cos((t - kPi - r) * g);
  return std::cos((kPi / 2.0 - r) * g) * std::cos((t - 1.5 * kPi - s) * g);
}

double dmu(double theta) {
  double t = theta;
  if (t < 0.0) t += 2.0 * kPi;
  const double g = kGamma, s = kSigma, r = rho();
  if (t <= kPi / 2.0) return -g * std::cos((kPi / 2.0 - s) * g) * std::sin((t - kPi / 2.0 + r) * g);
  if (t <= kPi) return -g * std::cos(r * g) * std::sin((t - kPi + s) * g);
  if (t <= 1.5 * kPi) return -g * std::cos(s * g) * std::sin((t - kPi - r) * g);
  return -g * std::cos((kPi / 2.0 - r) * g) * std::sin((t - 1.5 * kPi - s) * g);
}

double exact(const Vec3& p) {
  const double r = std::hypot(p.x(), p.y());
  if (r == 0.0) return 0.0;
  return std::pow(r, kGamma) * mu(std::atan2(p.y(), p.x()));
}

Vec3 exact_grad(const Vec3& p) {
  const double r2 = p.x() * p.x() + p.y() * p.y();
  const double t = std::atan2(p.y(), p.x());
  const double m = mu(t), dm = dmu(t);
  const double s = std::pow(r2, kGamma / 2.0 - 1.0);  // r^(gamma-2)
  return Vec3(s * (kGamma * p.x() * m - p.y() * dm), s * (kGamma * p.y() * m + p.x() * dm), 0.0);
}

double coefficient(const Vec3& p) {
  return (p.x() > 0.0) == (p.y() > 0.0) ? kRatio : 1.0;
}

std::array<double, 3> relation_residuals() {
  const double g = kGamma, s = kSigma, r = rho();
  const double R = kRatio;
  return {
      R + std::tan((kPi / 2.0 - s) * g) / std::tan(r * g),
      1.0 / R + std::tan(r * g) / std::tan(s * g),
      R + std::tan(s * g) / std::tan((kPi / 2.0 - r) * g),
  };
}

double fd_laplacian_max(int samples, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> mag(0.1, 0.9);
  std::bernoulli_distribution flip;
  const double h = 1e-4;
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double x = mag(rng) * (flip(rng) ? 1.0 : -1.0);
    const double y = mag(rng) * (flip(rng) ? 1.0 : -1.0);
    const Vec3 p(x, y, 0.0);
    const double lap = (exact(p + Vec3(h, 0, 0)) + exact(p - Vec3(h, 0, 0)) +
                        exact(p + Vec3(0, h, 0)) + exact(p - Vec3(0, h, 0)) - 4.0 * exact(p)) /
                       (h * h);
    worst = std::max(worst, std::abs(lap));
  }
  return worst;
}

}  // namespace kellogg

Mesh build_level_mesh(const MeshSchedule& s, int level) {
  const int n = s.levels.at(level);
  switch (s.kind) {
    case MeshSchedule::Kind::UniformTri: return uniform_triangular(n, s.domain);
    case MeshSchedule::Kind::AnisotropicTri: return anisotropic_triangular(s.aniso_k, n);
    case MeshSchedule::Kind::Rect2D: return uniform_rect2d(n, s.domain);
    case MeshSchedule::Kind::Box3D: return uniform_box3d(n);
    case MeshSchedule::Kind::Kellogg: {
      Mesh m = locally_refined_kellogg(s.kellogg_base_n, s.kellogg_extra);
      for (int i = 0; i < n; ++i) m = refine_red(m);
      return m;
    }
  }
  throw std::logic_error("build_level_mesh: unknown schedule kind");
}

namespace {

CaseSpec case_1(char variant) {
  CaseSpec c;
  c.id = std::string("1") + variant;
  c.dim = 2;
  c.schedule.kind = MeshSchedule::Kind::UniformTri;
  c.schedule.levels = {8, 16, 32, 64, 128};
  if (variant == 'c') {
    c.description = "Laplace on (0,1)^2, Robin condition on x = 1";
    auto u = [](const Vec3& p) { return std::sin(kPi * p.y()) * std::exp(-p.x()); };
    c.exact.u = u;
    c.exact.grad = [u](const Vec3& p) {
      return Vec3(-u(p), kPi * std::cos(kPi * p.y()) * std::exp(-p.x()), 0.0);
    };
    c.problem.source = [u](const Vec3& p) { return (kPi * kPi - 1.0) * u(p); };
    c.problem.dirichlet = u;
    c.problem.is_robin_tag = [](int tag) { return tag == kXMax; };
    c.problem.robin_alpha = [](const Vec3&) { return 1.0; };
    c.problem.mode = DirichletMode::L2Projection;
    return c;
  }
  c.description = variant == 'a' ? "Laplace on (0,1)^2, Dirichlet data by midpoint interpolation"
                                 : "Laplace on (0,1)^2, Dirichlet data by L2 projection";
  auto u = [](const Vec3& p) {
    return std::sin(2.0 * kPi * p.x() + kPi / 2.0) * std::sin(2.0 * kPi * p.y() + kPi / 2.0);
  };
  c.exact.u = u;
  c.exact.grad = [](const Vec3& p) {
    const double sx = std::sin(2.0 * kPi * p.x() + kPi / 2.0);
    const double sy = std::sin(2.0 * kPi * p.y() + kPi / 2.0);
    const double cx = std::cos(2.0 * kPi * p.x() + kPi / 2.0);
    const double cy = std::cos(2.0 * kPi * p.y() + kPi / 2.0);
    return Vec3(2.0 * kPi * cx * sy, 2.0 * kPi * sx * cy, 0.0);
  };
  c.problem.source = [u](const Vec3& p) { return 8.0 * kPi * kPi * u(p); };
  c.problem.dirichlet = u;
  c.problem.mode =
      variant == 'a' ? DirichletMode::NodalInterpolation : DirichletMode::L2Projection;
  return c;
}

CaseSpec case_2() {
  CaseSpec c;
  c.id = "2";
  c.description = "degenerate diffusion A = xy I on (0,1)^2";
  c.dim = 2;
  c.schedule.kind = MeshSchedule::Kind::UniformTri;
  c.schedule.levels = {8, 16, 32, 64, 128};
  c.problem.coeff.A = [](const Vec3& p) { return scaled_identity(p.x() * p.y()); };
  c.exact.u = [](const Vec3& p) { return p.x() * (1 - p.x()) * p.y() * (1 - p.y()); };
  c.exact.grad = [](const Vec3& p) {
    return Vec3((1 - 2 * p.x()) * p.y() * (1 - p.y()), p.x() * (1 - p.x()) * (1 - 2 * p.y()), 0.0);
  };
  c.problem.source = [](const Vec3& p) {
    const double x = p.x(), y = p.y();
    return -((1 - 4 * x) * y * y * (1 - y) + (1 - 4 * y) * x * x * (1 - x));
  };
  c.problem.dirichlet = c.exact.u;
  return c;
}

CaseSpec case_3(double gamma) {
  CaseSpec c;
  c.id = gamma == 0.5 ? "3a" : "3b";
  c.description = "corner singularity u = x(1-x)y(1-y) r^(gamma-2), gamma = " + std::to_string(gamma);
  c.dim = 2;
  c.schedule.kind = MeshSchedule::Kind::UniformTri;
  c.schedule.levels = {8, 16, 32, 64, 128};
  const double a = gamma - 2.0;
  auto bubble = [](const Vec3& p) { return p.x() * (1 - p.x()) * p.y() * (1 - p.y()); };
  c.exact.u = [a, bubble](const Vec3& p) {
    return bubble(p) * std::pow(p.x() * p.x() + p.y() * p.y(), a / 2.0);
  };
  c.exact.grad = [a, bubble](const Vec3& p) {
    const double x = p.x(), y = p.y();
    const double r2 = x * x + y * y;
    const double ra = std::pow(r2, a / 2.0), ram2 = std::pow(r2, a / 2.0 - 1.0);
    const double px = (1 - 2 * x) * y * (1 - y), py = x * (1 - x) * (1 - 2 * y);
    return Vec3(ra * px + a * ram2 * bubble(p) * x, ra * py + a * ram2 * bubble(p) * y, 0.0);
  };
  c.problem.source = [a, bubble](const Vec3& p) {
    const double x = p.x(), y = p.y();
    const double r2 = x * x + y * y;
    const double px = (1 - 2 * x) * y * (1 - y), py = x * (1 - x) * (1 - 2 * y);
    const double lap_b = -2.0 * (y * (1 - y) + x * (1 - x));
    return -std::pow(r2, a / 2.0 - 1.0) *
           (r2 * lap_b + 2.0 * a * (x * px + y * py) + a * a * bubble(p));
  };
  c.problem.dirichlet = c.exact.u;
  return c;
}

CaseSpec case_4() {
  CaseSpec c;
  c.id = "4";
  c.description = "checkerboard interface coefficient on (-1,1)^2, u = r^0.1 mu(theta)";
  c.dim = 2;
  c.schedule.kind = MeshSchedule::Kind::Kellogg;
  c.schedule.levels = {0, 1, 2, 3, 4};  // uniform refinements of the initial mesh
  c.schedule.kellogg_base_n = 8;
  c.schedule.kellogg_extra = 2;
  c.problem.coeff.A = [](const Vec3& p) { return scaled_identity(kellogg::coefficient(p)); };
  c.exact.u = kellogg::exact;
  c.exact.grad = kellogg::exact_grad;
  c.problem.source = nullptr;  // f = 0
  c.problem.dirichlet = kellogg::exact;
  return c;
}

CaseSpec case_5(int k) {
  CaseSpec c;
  c.id = k == 3 ? "5a" : "5b";
  c.description = "anisotropic A = diag(k^2, 1) with k = " + std::to_string(k);
  c.dim = 2;
  c.schedule.kind = MeshSchedule::Kind::AnisotropicTri;
  c.schedule.aniso_k = k;
  c.schedule.levels = k == 3 ? std::vector<int>{8, 16, 32, 64, 128}
                             : std::vector<int>{4, 8, 16, 32, 64};
  c.problem.coeff.A = [k](const Vec3&) {
    Eigen::Matrix3d A = Eigen::Matrix3d::Identity();
    A(0, 0) = double(k) * double(k);
    return A;
  };
  c.exact.u = [k](const Vec3& p) {
    return std::sin(2.0 * kPi * p.x()) * std::sin(2.0 * k * kPi * p.y());
  };
  c.exact.grad = [k](const Vec3& p) {
    return Vec3(2.0 * kPi * std::cos(2.0 * kPi * p.x()) * std::sin(2.0 * k * kPi * p.y()),
                2.0 * k * kPi * std::sin(2.0 * kPi * p.x()) * std::cos(2.0 * k * kPi * p.y()), 0.0);
  };
  c.problem.source = [k, u = c.exact.u](const Vec3& p) {
    return 8.0 * kPi * kPi * k * k * u(p);
  };
  c.problem.dirichlet = c.exact.u;
  return c;
}

CaseSpec case_6() {
  CaseSpec c;
  c.id = "6";
  c.description = "3D Laplace on the unit cube, (Q0,Q0,RT0) elements";
  c.dim = 3;
  c.schedule.kind = MeshSchedule::Kind::Box3D;
  c.schedule.levels = {8, 12, 16, 20};
  c.exact.u = [](const Vec3& p) {
    return std::sin(2 * kPi * p.x()) * std::sin(2 * kPi * p.y()) * std::sin(2 * kPi * p.z());
  };
  c.exact.grad = [](const Vec3& p) {
    const double sx = std::sin(2 * kPi * p.x()), cx = std::cos(2 * kPi * p.x());
    const double sy = std::sin(2 * kPi * p.y()), cy = std::cos(2 * kPi * p.y());
    const double sz = std::sin(2 * kPi * p.z()), cz = std::cos(2 * kPi * p.z());
    return Vec3(2 * kPi * cx * sy * sz, 2 * kPi * sx * cy * sz, 2 * kPi * sx * sy * cz);
  };
  c.problem.source = [u = c.exact.u](const Vec3& p) { return 12.0 * kPi * kPi * u(p); };
  c.problem.dirichlet = c.exact.u;
  return c;
}

}  // namespace

CaseSpec make_case(const std::string& id) {
  if (id == "1a") return case_1('a');
  if (id == "1b") return case_1('b');
  if (id == "1c") return case_1('c');
  if (id == "2") return case_2();
  if (id == "3a") return case_3(0.5);
  if (id == "3b") return case_3(0.25);
  if (id == "4") return case_4();
  if (id == "5a") return case_5(3);
  if (id == "5b") return case_5(9);
  if (id == "6") return case_6();
  throw std::invalid_argument("make_case: unknown case id '" + id + "'");
}

std::vector<std::string> case_ids() {
  return {"1a", "1b", "1c", "2", "3a", "3b", "4", "5a", "5b", "6"};
}

ErrorReport run_case(const CaseSpec& spec, const RunOptions& opt) {
  ErrorReport report;
  report.quad_order = opt.order;

  if (spec.id == "4") {
    const auto res = kellogg::relation_residuals();
    for (double r : res) {
      if (std::abs(r) > 1e-6)
        std::cerr << "warning: interface-parameter relation residual " << r << "\n";
    }
  }

  const int n_levels = opt.max_levels > 0
                           ? std::min<int>(opt.max_levels, int(spec.schedule.levels.size()))
                           : int(spec.schedule.levels.size());
  for (int level = 0; level < n_levels; ++level) {
    const auto t0 = std::chrono::steady_clock::now();
    const Mesh mesh = build_level_mesh(spec.schedule, level);
    const SparseSystem sys = assemble(mesh, spec.problem, opt.order);

    SolverConfig cfg;
    cfg.method = opt.method.value_or(spec.problem.symmetric() ? SolveMethod::CG
                                                              : SolveMethod::BiCGStab);
    cfg.tol = opt.tol;
    cfg.max_iter = opt.max_iter;
    SolveReport sr;
    Eigen::VectorXd x_free;
    try {
      x_free = solve(sys, cfg, &sr);
    } catch (const SolveFailure& e) {
      if (cfg.method != SolveMethod::DenseLU && sys.dofs.n_free() < 3000) {
        std::cerr << "note: iterative solve failed (" << e.what() << "), dense LU fallback\n";
        cfg.method = SolveMethod::DenseLU;
        x_free = solve(sys, cfg, &sr);
      } else {
        throw;
      }
    }

    LevelRecord rec = error_norms(mesh, expand_solution(sys, x_free), spec.exact, opt.order);
    rec.level = level;
    report.levels.push_back(rec);

    if (!opt.out_dir.empty() && opt.dump_meshes) {
      std::ofstream out(opt.out_dir + "/" + spec.id + "_mesh_" + std::to_string(level) + ".txt");
      dump_mesh(mesh, out);
    }
    if (!opt.quiet) {
      const double dt =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      std::printf("case %-3s level %d  h=%-10.4g cells=%-7d dofs=%-7d iters=%-5d "
                  "res=%.1e  [%.2fs]\n",
                  spec.id.c_str(), level, rec.h, rec.n_cells, rec.n_dofs, sr.iterations,
                  sr.rel_residual, dt);
      std::printf("  %.4e  %.4e  %.4e  %.4e  %.4e  %.4e\n", rec.grad_e, rec.e0, rec.eb,
                  rec.grad_true, rec.u0_true, rec.e0_inf);
    }
  }
  report.fit_rates();

  if (!opt.out_dir.empty()) {
    std::filesystem::create_directories(opt.out_dir);
    emit_csv(report, opt.out_dir + "/" + spec.id + "_errors.csv");
    emit_rates_csv(report, opt.out_dir + "/" + spec.id + "_rates.csv");
  }
  return report;
}

namespace {

const char* kCsvHeader = "level,h,grad_d_e,e0,eb,grad_u_err,u0_err,e0_inf";

std::string format_row(const char* label, double h, const std::array<double, 6>& v, bool with_h) {
  char buf[256];
  if (with_h)
    std::snprintf(buf, sizeof buf, "%s,%.5e,%.5e,%.5e,%.5e,%.5e,%.5e,%.5e", label, h, v[0], v[1],
                  v[2], v[3], v[4], v[5]);
  else
    std::snprintf(buf, sizeof buf, "%s,,%.5e,%.5e,%.5e,%.5e,%.5e,%.5e", label, v[0], v[1], v[2],
                  v[3], v[4], v[5]);
  return buf;
}

}  // namespace

void emit_csv(const ErrorReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("emit_csv: cannot open " + path);
  out << kCsvHeader << "\n";
  for (const LevelRecord& r : report.levels)
    out << format_row(std::to_string(r.level).c_str(), r.h, r.metrics(), true) << "\n";
  if (!report.levels.empty()) out << format_row("rate", 0.0, report.rates, false) << "\n";
  if (!out) throw std::runtime_error("emit_csv: write failed for " + path);
}

void emit_rates_csv(const ErrorReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("emit_rates_csv: cannot open " + path);
  out << "grad_d_e,e0,eb,grad_u_err,u0_err,e0_inf\n";
  if (!report.levels.empty()) {
    char buf[192];
    const auto& v = report.rates;
    std::snprintf(buf, sizeof buf, "%.5e,%.5e,%.5e,%.5e,%.5e,%.5e", v[0], v[1], v[2], v[3], v[4],
                  v[5]);
    out << buf << "\n";
  }
  if (!out) throw std::runtime_error("emit_rates_csv: write failed for " + path);
}

namespace {

const std::vector<ReferenceTable>& reference_tables() {
  static const std::vector<ReferenceTable> tables = {
      {"1a",
       {1. / 8, 1. / 16, 1. / 32, 1. / 64, 1. / 128},
       {{{7.14e-01, 2.16e-02, 4.05e-02, 1.01e+00, 1.30e-01, 4.43e-02}},
        {{3.56e-01, 5.61e-03, 1.01e-02, 5.04e-01, 6.53e-02, 1.12e-02}},
        {{1.78e-01, 1.41e-03, 2.53e-03, 2.51e-01, 3.27e-02, 2.86e-03}},
        {{8.90e-02, 3.55e-04, 6.32e-04, 1.25e-01, 1.63e-02, 7.15e-04}},
        {{4.45e-02, 8.88e-05, 1.57e-04, 6.29e-02, 8.18e-03, 1.79e-04}}},
       {{1.0012, 1.9837, 2.0014, 1.0024, 0.9984, 1.9879}}},
      {"1b",
       {1. / 8, 1. / 16, 1. / 32, 1. / 64, 1. / 128},
       {{{7.10e-01, 1.75e-02, 3.08e-02, 1.01e+00, 1.29e-01, 3.68e-02}},
        {{3.55e-01, 4.59e-03, 7.69e-03, 5.04e-01, 6.52e-02, 9.54e-03}},
        {{1.78e-01, 1.16e-03, 1.92e-03, 2.51e-01, 3.27e-02, 2.39e-03}},
        {{8.90e-02, 2.90e-04, 4.81e-04, 1.25e-01, 1.63e-02, 6.01e-04}},
        {{4.45e-02, 7.27e-05, 1.20e-04, 6.29e-02, 8.18e-03, 1.50e-04}}},
       {{0.9993, 1.9808, 1.9999, 1.0015, 0.9968, 1.9861}}},
      {"1c",
       {1. / 8, 1. / 16, 1. / 32, 1. / 64, 1. / 128},
       {{{1.55e-01, 3.18e-03, 1.14e-02, 1.95e-01, 4.51e-02, 1.12e-02}},
        {{7.87e-02, 8.20e-04, 2.90e-03, 9.82e-02, 2.25e-02, 3.18e-03}},
        {{3.94e-02, 2.06e-04, 7.29e-04, 4.92e-02, 1.12e-02, 8.40e-04}},
        {{1.97e-02, 5.17e-05, 1.82e-04, 2.46e-02, 5.64e-03, 2.15e-04}},
        {{9.87e-03, 1.29e-05, 4.56e-05, 1.23e-02, 2.82e-03, 5.46e-05}}},
       {{0.9958, 1.9876, 1.9926, 0.9971, 1.0001, 1.9262}}},
      {"2",
       {1. / 8, 1. / 16, 1. / 32, 1. / 64, 1. / 128},
       {{{5.61e-02, 3.32e-03, 6.60e-03, 5.75e-02, 5.48e-03, 1.27e-02}},
        {{4.03e-02, 1.38e-03, 2.81e-03, 4.09e-02, 2.59e-03, 4.90e-03}},
        {{2.95e-02, 5.68e-04, 1.16e-03, 2.96e-02, 1.23e-03, 2.21e-03}},
        {{2.15e-02, 2.35e-04, 4.83e-04, 2.15e-02, 5.97e-04, 1.16e-03}},
        {{1.55e-02, 9.93e-05, 2.02e-04, 1.55e-02, 2.91e-04, 5.99e-04}}},
       {{0.4614, 1.2687, 1.2594, 0.4697, 1.0579, 1.0912}}},
      {"3a",
       {1. / 8, 1. / 16, 1. / 32, 1. / 64, 1. / 128},
       {{{1.88e-01, 6.40e-03, 1.47e-02, 2.54e-01, 1.49e-02, 4.30e-02}},
        {{1.36e-01, 2.20e-03, 5.28e-03, 1.84e-01, 7.66e-03, 3.01e-02}},
        {{9.74e-02, 7.62e-04, 1.86e-03, 1.32e-01, 3.89e-03, 2.12e-02}},
        {{6.93e-02, 2.65e-04, 6.57e-04, 9.42e-02, 1.96e-03, 1.49e-02}},
        {{4.92e-02, 9.33e-05, 2.32e-04, 6.69e-02, 9.88e-04, 1.05e-02}}},
       {{0.4852, 1.5251, 1.4992, 0.4827, 0.9805, 0.5066}}},
      {"3b",
       {1. / 8, 1. / 16, 1. / 32, 1. / 64, 1. / 128},
       {{{4.93e-01, 1.69e-02, 3.58e-02, 6.65e-01, 2.56e-02, 1.25e-01}},
        {{4.18e-01, 7.07e-03, 1.52e-02, 5.66e-01, 1.31e-02, 1.05e-01}},
        {{3.53e-01, 2.94e-03, 6.39e-03, 4.79e-01, 6.72e-03, 8.85e-02}},
        {{2.98e-01, 1.22e-03, 2.68e-03, 4.04e-01, 3.42e-03, 7.44e-02}},
        {{2.51e-01, 5.14e-04, 1.12e-03, 3.40e-01, 1.73e-03, 6.25e-02}}},
       {{0.2437, 1.2613, 1.2489, 0.2417, 0.9717, 0.2505}}},
      {"4",
       {},
       {{{1.07e-01, 3.97e-03, 9.95e-03, 1.47e-01, 2.60e-02, 1.97e-02}},
        {{9.76e-02, 2.92e-03, 6.44e-03, 1.26e-01, 1.33e-02, 1.94e-02}},
        {{9.30e-02, 2.51e-03, 5.11e-03, 1.16e-01, 7.01e-03, 1.91e-02}},
        {{9.12e-02, 2.21e-03, 4.44e-03, 1.11e-01, 3.95e-03, 1.88e-02}},
        {{8.98e-02, 1.95e-03, 3.91e-03, 1.07e-01, 2.55e-03, 1.84e-02}}},
       {{0.0604, 0.2446, 0.3229, 0.1084, 0.8461, 0.0239}}},
      {"5a",
       {1. / 8, 1. / 16, 1. / 32, 1. / 64, 1. / 128},
       {{{1.48e+00, 1.95e-02, 4.61e-02, 2.70e+00, 1.29e-01, 4.13e-02}},
        {{7.39e-01, 5.11e-03, 1.16e-02, 1.35e+00, 6.53e-02, 1.06e-02}},
        {{3.69e-01, 1.29e-03, 2.92e-03, 6.80e-01, 3.27e-02, 2.67e-03}},
        {{1.84e-01, 3.24e-04, 7.33e-04, 3.40e-01, 1.63e-02, 6.68e-04}},
        {{9.23e-02, 8.12e-05, 1.83e-04, 1.70e-01, 8.18e-03, 1.66e-04}}},
       {{1.0010, 1.9793, 1.9942, 0.9972, 0.9975, 1.9906}}},
      {"5b",
       {1. / 4, 1. / 8, 1. / 16, 1. / 32, 1. / 64},
       {{{7.98e+00, 6.80e-02, 2.93e-01, 1.58e+01, 2.52e-01, 1.49e-01}},
        {{3.89e+00, 2.07e-02, 7.44e-02, 8.18e+00, 1.30e-01, 4.22e-02}},
        {{1.91e+00, 5.43e-03, 1.88e-02, 4.12e+00, 6.53e-02, 1.09e-02}},
        {{9.54e-01, 1.37e-03, 4.72e-03, 2.06e+00, 3.27e-02, 2.74e-03}},
        {{4.76e-01, 3.44e-04, 1.18e-03, 1.03e+00, 1.63e-02, 6.84e-04}}},
       {{1.0161, 1.9160, 1.9897, 0.9857, 0.9883, 1.9492}}},
      {"6",
       {1. / 8, 1. / 12, 1. / 16, 1. / 20},
       {{{1.85e-01, 1.62e-02, 4.27e-02, 1.22e+00, 1.34e-01, 3.63e-02}},
        {{8.53e-02, 7.69e-03, 1.94e-02, 8.19e-01, 9.14e-02, 1.96e-02}},
        {{4.86e-02, 4.42e-03, 1.10e-02, 6.15e-01, 6.89e-02, 1.18e-02}},
        {{3.13e-02, 2.85e-03, 7.07e-03, 4.92e-01, 5.52e-02, 7.78e-03}}},
       {{1.9389, 1.8984, 1.9618, 0.9914, 0.9737, 1.6779}}},
  };
  return tables;
}

}  // namespace

const ReferenceTable* reference_table(const std::string& case_id) {
  for (const ReferenceTable& t : reference_tables())
    if (case_id == t.case_id) return &t;
  return nullptr;
}

namespace {

using nlohmann::json;

std::function<double(const Vec3&)> scalar_expr(const json& j) {
  const Expr e = Expr::parse(j.get<std::string>());
  return [e](const Vec3& p) { return e(p); };
}

}  // namespace

CaseSpec case_from_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("case_from_json: cannot open " + path);
  json j;
  in >> j;

  CaseSpec c;
  c.id = j.value("name", "custom");
  c.description = "configured case";

  const json& mesh = j.at("mesh");
  const std::string type = mesh.at("type").get<std::string>();
  if (type == "uniform_triangular") c.schedule.kind = MeshSchedule::Kind::UniformTri;
  else if (type == "anisotropic_triangular") c.schedule.kind = MeshSchedule::Kind::AnisotropicTri;
  else if (type == "rect2d") c.schedule.kind = MeshSchedule::Kind::Rect2D;
  else if (type == "box3d") c.schedule.kind = MeshSchedule::Kind::Box3D;
  else if (type == "kellogg") c.schedule.kind = MeshSchedule::Kind::Kellogg;
  else throw std::invalid_argument("case_from_json: unknown mesh type '" + type + "'");
  c.dim = (type == "box3d") ? 3 : 2;
  if (mesh.contains("domain")) {
    const auto d = mesh.at("domain").get<std::vector<double>>();
    if (d.size() != 4) throw std::invalid_argument("case_from_json: domain must be [x0,y0,x1,y1]");
    c.schedule.domain = Rect2{d[0], d[1], d[2], d[3]};
  }
  c.schedule.aniso_k = mesh.value("k", 1);
  c.schedule.kellogg_base_n = mesh.value("base_n", 8);
  c.schedule.kellogg_extra = mesh.value("extra_levels", 2);
  c.schedule.levels = j.at("levels").get<std::vector<int>>();

  if (j.contains("A")) {
    const json& A = j.at("A");
    if (A.is_string()) {
      const Expr e = Expr::parse(A.get<std::string>());
      c.problem.coeff.A = [e](const Vec3& p) { return scaled_identity(e(p)); };
    } else {
      std::vector<std::vector<Expr>> rows;
      for (const auto& row : A) {
        rows.emplace_back();
        for (const auto& entry : row) rows.back().push_back(Expr::parse(entry.get<std::string>()));
      }
      const size_t d = rows.size();
      if (d < 2 || d > 3) throw std::invalid_argument("case_from_json: A must be 2x2 or 3x3");
      c.problem.coeff.A = [rows, d](const Vec3& p) {
        Eigen::Matrix3d m = Eigen::Matrix3d::Identity();
        for (size_t i = 0; i < d; ++i)
          for (size_t k = 0; k < d; ++k) m(int(i), int(k)) = rows[i][k](p);
        return m;
      };
    }
  }
  if (j.contains("beta")) {
    std::vector<Expr> comps;
    for (const auto& entry : j.at("beta")) comps.push_back(Expr::parse(entry.get<std::string>()));
    c.problem.coeff.beta = [comps](const Vec3& p) {
      Vec3 v = Vec3::Zero();
      for (size_t i = 0; i < comps.size() && i < 3; ++i) v(int(i)) = comps[i](p);
      return v;
    };
  }
  if (j.contains("gamma")) c.problem.coeff.gamma = scalar_expr(j.at("gamma"));
  if (j.contains("f")) c.problem.source = scalar_expr(j.at("f"));

  if (!j.contains("u"))
    throw std::invalid_argument("case_from_json: an exact solution 'u' is required");
  c.exact.u = scalar_expr(j.at("u"));
  if (j.contains("grad_u")) {
    std::vector<Expr> comps;
    for (const auto& entry : j.at("grad_u")) comps.push_back(Expr::parse(entry.get<std::string>()));
    c.exact.grad = [comps](const Vec3& p) {
      Vec3 v = Vec3::Zero();
      for (size_t i = 0; i < comps.size() && i < 3; ++i) v(int(i)) = comps[i](p);
      return v;
    };
  }
  c.problem.dirichlet = j.contains("dirichlet") ? scalar_expr(j.at("dirichlet")) : c.exact.u;
  if (j.contains("robin_tags")) {
    const auto tags = j.at("robin_tags").get<std::vector<int>>();
    c.problem.is_robin_tag = [tags](int tag) {
      return std::find(tags.begin(), tags.end(), tag) != tags.end();
    };
    if (j.contains("alpha")) c.problem.robin_alpha = scalar_expr(j.at("alpha"));
    if (j.contains("gR")) c.problem.robin_data = scalar_expr(j.at("gR"));
  }
  const std::string mode = j.value("dirichlet_mode", "l2");
  c.problem.mode =
      mode == "nodal" ? DirichletMode::NodalInterpolation : DirichletMode::L2Projection;
  return c;
}

}  // namespace wg
