// Benchmark CLI: runs the bundled convergence cases (or a JSON-configured
// problem), writes per-level error tables and fitted rates as CSV, and can
// print side-by-side deltas against the embedded reference tables.
#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>

#include "wg/cases.hpp"

namespace {

int run_one(const wg::CaseSpec& spec, const wg::RunOptions& options, const std::string& compare) {
  const wg::ErrorReport report = wg::run_case(spec, options);

  std::printf("case %s rates:", spec.id.c_str());
  for (double r : report.rates) std::printf("  %7.4f", r);
  std::printf("\n");

  if (!compare.empty()) {
    if (compare != "paper") {
      std::cerr << "unknown --compare target '" << compare << "'\n";
      return 2;
    }
    const wg::ReferenceTable* ref = wg::reference_table(spec.id);
    if (!ref) {
      std::printf("no reference table for case %s\n", spec.id.c_str());
      return 0;
    }
    std::printf("\n%-6s %-10s", "level", "h");
    for (const char* name : wg::kMetricNames) std::printf("  %-16s", name);
    std::printf("\n");
    const size_t n = std::min(report.levels.size(), ref->values.size());
    for (size_t i = 0; i < n; ++i) {
      const auto ours = report.levels[i].metrics();
      const auto& theirs = ref->values[i];
      std::printf("%-6zu %-10.4g", i, report.levels[i].h);
      for (int m = 0; m < 6; ++m)
        std::printf("  %9.3e %+5.1f%%", ours[m], 100.0 * (ours[m] - theirs[m]) / theirs[m]);
      std::printf("\n");
    }
    std::printf("%-17s", "rate (ours/ref)");
    for (int m = 0; m < 6; ++m)
      std::printf("  %7.4f/%-7.4f", report.rates[m], ref->rates[m]);
    std::printf("\n");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weak Galerkin elliptic benchmark"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run a benchmark case");
  std::string case_id, config_path, out_dir, solver_name, compare;
  int levels = 0, order = wg::kDefaultOrder;
  double tol = 1e-12;
  bool dump_mesh = false;
  run->add_option("--case", case_id, "bundled case id (see `wg list`)");
  run->add_option("--config", config_path, "JSON case description");
  run->add_option("--levels", levels, "run only the first L mesh levels");
  run->add_option("--order", order, "quadrature order (mapped rules are degree 2*order-1 exact)")
      ->check(CLI::Range(1, 10));
  run->add_option("--out", out_dir, "directory for <case>_errors.csv / <case>_rates.csv");
  run->add_flag("--dump-mesh", dump_mesh, "also write plain-text mesh dumps per level");
  run->add_option("--solver", solver_name, "cg | bicgstab | lu (default: by problem symmetry)");
  run->add_option("--tol", tol, "relative residual tolerance");
  run->add_option("--compare", compare, "print deltas against the embedded reference tables");

  auto* list = app.add_subcommand("list", "list bundled case ids");

  CLI11_PARSE(app, argc, argv);

  if (list->parsed()) {
    for (const std::string& id : wg::case_ids()) {
      const wg::CaseSpec spec = wg::make_case(id);
      std::printf("%-4s %s\n", id.c_str(), spec.description.c_str());
    }
    return 0;
  }

  try {
    if (case_id.empty() == config_path.empty()) {
      std::cerr << "run: give exactly one of --case or --config\n";
      return 2;
    }
    const wg::CaseSpec spec =
        config_path.empty() ? wg::make_case(case_id) : wg::case_from_json(config_path);

    wg::RunOptions options;
    options.order = order;
    options.tol = tol;
    options.out_dir = out_dir;
    options.dump_meshes = dump_mesh;
    options.max_levels = levels;
    if (!solver_name.empty()) {
      if (solver_name == "cg") options.method = wg::SolveMethod::CG;
      else if (solver_name == "bicgstab") options.method = wg::SolveMethod::BiCGStab;
      else if (solver_name == "lu") options.method = wg::SolveMethod::DenseLU;
      else {
        std::cerr << "unknown solver '" << solver_name << "'\n";
        return 2;
      }
    }
    return run_one(spec, options, compare);
  } catch (const wg::SolveFailure& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
