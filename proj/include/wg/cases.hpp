// The bundled benchmark cases: exact solutions, coefficients, mesh
// schedules, end-to-end runs and CSV output.
#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "wg/postprocess.hpp"
#include "wg/solver.hpp"

namespace wg {

struct MeshSchedule {
  enum class Kind { UniformTri, AnisotropicTri, Rect2D, Box3D, Kellogg };
  Kind kind = Kind::UniformTri;
  Rect2 domain{};
  int aniso_k = 1;
  std::vector<int> levels;  // n per level; for Kellogg the number of uniform refinements
  int kellogg_base_n = 8;
  int kellogg_extra = 2;
};

Mesh build_level_mesh(const MeshSchedule& schedule, int level);

struct CaseSpec {
  std::string id;
  std::string description;
  int dim = 2;
  MeshSchedule schedule;
  ProblemSpec problem;
  ExactSolution exact;
};

// Known ids: 1a, 1b, 1c, 2, 3a, 3b, 4, 5a, 5b, 6.
CaseSpec make_case(const std::string& id);
std::vector<std::string> case_ids();

// Structured JSON description with symbolic coefficients; see the README.
CaseSpec case_from_json(const std::string& path);

struct RunOptions {
  int order = kDefaultOrder;
  std::optional<SolveMethod> method;  // default: CG when symmetric, else BiCGStab
  double tol = 1e-12;
  int max_iter = 200000;
  std::string out_dir;  // empty: no files written
  bool dump_meshes = false;
  int max_levels = 0;   // 0: run the full schedule
  bool quiet = false;
};

ErrorReport run_case(const CaseSpec& spec, const RunOptions& options);

// One row per level in the table column order, then a final row of fitted
// rates; scientific notation with 6 significant digits.
void emit_csv(const ErrorReport& report, const std::string& path);
void emit_rates_csv(const ErrorReport& report, const std::string& path);

// Published reference results the benchmark reproduces; used by `--compare`.
struct ReferenceTable {
  const char* case_id;
  std::vector<double> h;  // empty for level-indexed tables
  std::vector<std::array<double, 6>> values;
  std::array<double, 6> rates;
};
const ReferenceTable* reference_table(const std::string& case_id);

// Checkerboard-coefficient interface problem (case 4) internals, exposed for
// its self-tests.
namespace kellogg {
inline constexpr double kGamma = 0.1;
inline constexpr double kRatio = 161.4476387975881;  // K1 / K2
inline constexpr double kSigma = -14.92256510455152;
double rho();  // ~ pi/4
double mu(double theta);
double dmu(double theta);
double exact(const Vec3& p);
Vec3 exact_grad(const Vec3& p);
double coefficient(const Vec3& p);  // K1 in quadrants 1 and 3, K2 otherwise

// Residuals of the three nonlinear parameter relations tying gamma, rho,
// sigma and K1/K2 together.
std::array<double, 3> relation_residuals();
// max |Laplacian u| by central differences at random points away from the
// axes; u is harmonic inside each quadrant, so this is a transcription check.
double fd_laplacian_max(int samples, unsigned seed);
}  // namespace kellogg

}  // namespace wg
