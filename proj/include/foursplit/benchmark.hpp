#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "foursplit/presets.hpp"
#include "foursplit/solver.hpp"

namespace foursplit {

enum class ProblemKind { kMatrixCompletion, kKyFan, kFeasibility };

ProblemKind parse_problem_kind(const std::string& text);
std::string to_string(ProblemKind kind);

struct BenchmarkCell {
  PresetName preset = PresetName::kFourSplit;
  double tau = 1.0;

  std::string id() const;
};

/// Negative sizes, weights and caps select the per-problem defaults.
struct BenchmarkPlan {
  ProblemKind problem = ProblemKind::kMatrixCompletion;
  Index m = -1;  // rows (matrix completion, synthetic Ky Fan)
  Index n = 100;
  Index r = 10;
  Index s = -1;
  Index k = 0;  // Ky Fan budget; 0 selects floor(n / 10)
  double lambda1 = -1.0;
  double lambda2 = -1.0;
  std::string data_path;       // sparse dataset for Ky Fan; empty means synthetic
  bool scale_columns = false;  // unit-norm columns for ingested data
  std::vector<BenchmarkCell> cells;
  double eps = 1e-6;
  long max_iter = -1;
  std::uint64_t seed = 1;
  double safety = 0.99;
  long stride = 1;
  std::string csv_path;
};

/// Problem of a plan with every default resolved.
ProblemSpec build_problem(const BenchmarkPlan& plan);
long default_max_iter(ProblemKind kind);

enum class RowFlag { kConverged, kCapped, kInapplicable };
std::string to_string(RowFlag flag);

struct ResultRow {
  std::string cell;
  long iterations = 0;
  double seconds = 0.0;
  double objective = 0.0;
  double measure = 0.0;
  RowFlag flag = RowFlag::kInapplicable;
  std::string note;
  Vector final_y;
};

/// Runs every cell from the problem's start point. Each cell stops on the
/// same measure, built on the original problem at tau = 1. Cells whose preset
/// or tau does not apply are reported, not fatal. Writes `plan.csv_path` when set.
std::vector<ResultRow> run_benchmark(const BenchmarkPlan& plan);

/// CSV with header cell,iter,time_s,objective,measure,flag.
std::string format_csv(const std::vector<ResultRow>& rows);
/// Human-readable table; capped rows carry a '*'.
std::string format_table(const std::vector<ResultRow>& rows);
/// Writes the table to `table` and the CSV to `csv_path` (when non-empty).
void emit_report(const std::vector<ResultRow>& rows, std::ostream& table, const std::string& csv_path);

enum class BoundSelector { kOurs, kBianZhang };
enum class BoundGrid {
  kLhRho,    // x = L_h/L_f, y = rho_f/L_f
  kSigmaLh,  // x = sigma_f/L_f, y = L_h/L_f
};

struct BoundSweep {
  BoundGrid grid = BoundGrid::kLhRho;
  BoundSelector selector = BoundSelector::kOurs;
  double tau = 1.0;
  Index nx = 20;  // intervals per axis; the grid includes both end points
  Index ny = 20;
  double x_max = 2.0;
  double y_max = 1.0;
  /// sigma_h and rho_h as multiples of L_h.
  double sigma_h_ratio = -1.0;
  double rho_h_ratio = 1.0;
};

struct BoundNode {
  double x = 0.0;
  double y = 0.0;
  double value = 0.0;  // alpha_bar * L_f, NaN where the bound does not exist
};

/// Normalized bound on an inclusive (nx+1) x (ny+1) grid with L_f = 1.
/// For tau >= 2 the value is the upper end of the admissible interval.
std::vector<BoundNode> sweep_stepsize_bounds(const BoundSweep& sweep);
std::string format_bounds_csv(const std::vector<BoundNode>& nodes);

}  // namespace foursplit
