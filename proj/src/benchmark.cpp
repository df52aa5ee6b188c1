#include "foursplit/benchmark.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "foursplit/datasets.hpp"
#include "foursplit/problems.hpp"

namespace foursplit {

ProblemKind parse_problem_kind(const std::string& text) {
  if (text == "mc") return ProblemKind::kMatrixCompletion;
  if (text == "kyfan") return ProblemKind::kKyFan;
  if (text == "feas") return ProblemKind::kFeasibility;
  throw ArgumentError("unknown problem '" + text + "' (expected mc, kyfan or feas)");
}

std::string to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::kMatrixCompletion: return "mc";
    case ProblemKind::kKyFan: return "kyfan";
    case ProblemKind::kFeasibility: return "feas";
  }
  return "?";
}

std::string BenchmarkCell::id() const {
  if (preset != PresetName::kFourSplit) return to_string(preset);
  char buf[64];
  std::snprintf(buf, sizeof buf, "FOUR_SPLIT(tau=%g)", tau);
  return buf;
}

long default_max_iter(ProblemKind kind) {
  return kind == ProblemKind::kKyFan ? 100000 : 30000;
}

ProblemSpec build_problem(const BenchmarkPlan& plan) {
  switch (plan.problem) {
    case ProblemKind::kMatrixCompletion: {
      const Index n = plan.n;
      const Index m = plan.m > 0 ? plan.m : n;
      const Index s = plan.s >= 0 ? plan.s : m * n / 10;
      const CompletionInstance inst = gen_lowrank_instance(m, n, plan.r, s, plan.seed);
      MatrixCompletionProblem p;
      p.m = inst.m;
      p.omega = inst.omega;
      if (plan.lambda1 >= 0.0) p.lambda1 = plan.lambda1;
      if (plan.lambda2 >= 0.0) p.lambda2 = plan.lambda2;
      return build_matrix_completion_spec(p);
    }
    case ProblemKind::kKyFan: {
      KyFanLeastSquaresProblem p;
      if (!plan.data_path.empty()) {
        const SparseDataset data = load_sparse_dataset(plan.data_path);
        if (data.rows() == 0 || data.cols == 0) throw ArgumentError("dataset '" + plan.data_path + "' is empty");
        p.a = data.to_dense();
        p.b = data.label_vector();
      } else {
        const Index n = plan.n;
        auto [a, b] = gen_gaussian_ls(plan.m > 0 ? plan.m : 10 * n, n, plan.seed);
        p.a = std::move(a);
        p.b = std::move(b);
      }
      if (plan.scale_columns) scale_columns(p.a);
      if (plan.lambda1 >= 0.0) p.lambda1 = plan.lambda1;
      if (plan.lambda2 >= 0.0) p.lambda2 = plan.lambda2;
      p.k = plan.k;
      return build_kyfan_spec(p);
    }
    case ProblemKind::kFeasibility:
      return build_feasibility_spec(feasibility_demo(plan.n));
  }
  throw ArgumentError("unknown problem kind");
}

std::string to_string(RowFlag flag) {
  switch (flag) {
    case RowFlag::kConverged: return "converged";
    case RowFlag::kCapped: return "capped";
    case RowFlag::kInapplicable: return "inapplicable";
  }
  return "?";
}

std::vector<ResultRow> run_benchmark(const BenchmarkPlan& plan) {
  if (plan.cells.empty()) throw ArgumentError("benchmark plan has no cells");
  const ProblemSpec spec = build_problem(plan);
  StoppingCriterion stop = make_stopping(spec.params, plan.eps,
                                         plan.max_iter >= 0 ? plan.max_iter : default_max_iter(plan.problem),
                                         plan.safety);
  stop.stride = plan.stride;
  stop.measure_spec = &spec;

  RunOptions options;
  options.monitor = false;
  options.keep_trace = false;

  std::vector<ResultRow> rows;
  for (const BenchmarkCell& cell : plan.cells) {
    ResultRow row;
    row.cell = cell.id();
    PresetInstance inst;
    try {
      inst = instantiate(make_preset(cell.preset, cell.tau, plan.safety), spec);
    } catch (const PresetInapplicable& e) {
      row.note = e.what();
      rows.push_back(std::move(row));
      continue;
    } catch (const InfeasibleTau& e) {
      row.note = e.what();
      rows.push_back(std::move(row));
      continue;
    }
    row.note = inst.note;
    const RunReport rep = run(inst.spec, inst.cfg, stop, options);
    row.iterations = rep.iterations;
    row.seconds = rep.seconds;
    row.measure = rep.final_measure;
    row.objective = evaluate_objective(spec, rep.final_state.y).total;
    row.flag = rep.reason == Termination::kConverged ? RowFlag::kConverged : RowFlag::kCapped;
    row.final_y = rep.final_state.y;
    rows.push_back(std::move(row));
  }
  if (!plan.csv_path.empty()) {
    std::ofstream out(plan.csv_path);
    if (!out) throw IoError("cannot write '" + plan.csv_path + "'");
    out << format_csv(rows);
    if (!out) throw IoError("write error on '" + plan.csv_path + "'");
  }
  return rows;
}

namespace {

std::string sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10e", v);
  return buf;
}

}  // namespace

std::string format_csv(const std::vector<ResultRow>& rows) {
  std::string out = "cell,iter,time_s,objective,measure,flag\n";
  for (const ResultRow& r : rows) {
    out += r.cell;
    if (r.flag == RowFlag::kInapplicable) {
      out += ",,,,,inapplicable\n";
      continue;
    }
    out += ',' + std::to_string(r.iterations) + ',' + sci(r.seconds) + ',' + sci(r.objective) + ',' +
           sci(r.measure) + ',' + to_string(r.flag) + '\n';
  }
  return out;
}

std::string format_table(const std::vector<ResultRow>& rows) {
  std::ostringstream os;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-22s %10s %10s %16s %12s  %s\n", "cell", "iter", "time_s", "objective",
                "measure", "flag");
  os << buf;
  for (const ResultRow& r : rows) {
    if (r.flag == RowFlag::kInapplicable) {
      std::snprintf(buf, sizeof buf, "%-22s %10s %10s %16s %12s  %s\n", r.cell.c_str(), "-", "-", "-", "-",
                    "inapplicable");
    } else {
      const std::string iter = std::to_string(r.iterations) + (r.flag == RowFlag::kCapped ? "*" : "");
      std::snprintf(buf, sizeof buf, "%-22s %10s %10.3f %16.8e %12.4e  %s\n", r.cell.c_str(), iter.c_str(),
                    r.seconds, r.objective, r.measure, to_string(r.flag).c_str());
    }
    os << buf;
  }
  return os.str();
}

void emit_report(const std::vector<ResultRow>& rows, std::ostream& table, const std::string& csv_path) {
  if (rows.empty()) throw ArgumentError("emit_report: no rows");
  if (!csv_path.empty()) {
    std::ofstream out(csv_path);
    if (!out) throw IoError("cannot write '" + csv_path + "'");
    out << format_csv(rows);
    if (!out) throw IoError("write error on '" + csv_path + "'");
  }
  table << format_table(rows);
  if (!table) throw IoError("write error on report stream");
}

std::vector<BoundNode> sweep_stepsize_bounds(const BoundSweep& sw) {
  if (sw.nx < 1 || sw.ny < 1 || !(sw.x_max > 0.0) || !(sw.y_max > 0.0))
    throw ArgumentError("bound grid must be positive");
  std::vector<BoundNode> nodes;
  nodes.reserve(static_cast<std::size_t>((sw.nx + 1) * (sw.ny + 1)));
  for (Index j = 0; j <= sw.ny; ++j) {
    for (Index i = 0; i <= sw.nx; ++i) {
      BoundNode node;
      node.x = sw.x_max * static_cast<double>(i) / static_cast<double>(sw.nx);
      node.y = sw.y_max * static_cast<double>(j) / static_cast<double>(sw.ny);
      CurvatureParams p;
      p.l_f = 1.0;
      if (sw.grid == BoundGrid::kLhRho) {
        p.l_h = node.x;
        p.rho_f = node.y;
      } else {
        p.sigma_f = node.x;
        p.l_h = node.y;
      }
      p.sigma_h = sw.sigma_h_ratio * p.l_h;
      p.rho_h = sw.rho_h_ratio * p.l_h;
      try {
        node.value = sw.selector == BoundSelector::kOurs ? compute_alpha_bar(p, sw.tau).alpha_bar
                                                          : bian_zhang_alpha(p);
      } catch (const Error&) {
        node.value = std::numeric_limits<double>::quiet_NaN();
      }
      nodes.push_back(node);
    }
  }
  return nodes;
}

std::string format_bounds_csv(const std::vector<BoundNode>& nodes) {
  std::string out = "x,y,alpha_bar_times_lf\n";
  for (const BoundNode& n : nodes) out += sci(n.x) + ',' + sci(n.y) + ',' + (std::isnan(n.value) ? "nan" : sci(n.value)) + '\n';
  return out;
}

}  // namespace foursplit
