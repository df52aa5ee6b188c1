// Benchmark and stepsize-bound command line front end.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "foursplit/benchmark.hpp"

using namespace foursplit;

int main(int argc, char** argv) {
  CLI::App app{"Four-operator splitting benchmarks and stepsize bounds"};
  app.require_subcommand(1);

  // bench ------------------------------------------------------------------
  BenchmarkPlan plan;
  std::string problem = "mc";
  std::vector<double> taus;
  std::vector<std::string> presets;
  auto* bench = app.add_subcommand("bench", "Run preset and tau cells on one problem");
  bench->add_option("--problem", problem, "mc, kyfan or feas")->check(CLI::IsMember({"mc", "kyfan", "feas"}));
  bench->add_option("--n", plan.n, "columns / features / dimension");
  bench->add_option("--m", plan.m, "rows (defaults: n for mc, 10n for synthetic kyfan)");
  bench->add_option("--r", plan.r, "rank of the completion target");
  bench->add_option("--s", plan.s, "observed entries (default m n / 10)");
  bench->add_option("--k", plan.k, "Ky Fan budget (default floor(n/10))");
  bench->add_option("--lambda1", plan.lambda1, "first weight (problem default when omitted)");
  bench->add_option("--lambda2", plan.lambda2, "second weight (problem default when omitted)");
  bench->add_option("--tau", taus, "FOUR_SPLIT relaxation; repeatable");
  bench->add_option("--preset", presets, "DYS, DYS_BZ, PG, PDC, GPP or FOUR_SPLIT; repeatable");
  bench->add_option("--eps", plan.eps, "stationarity tolerance")->check(CLI::PositiveNumber);
  bench->add_option("--max-iter", plan.max_iter, "iteration cap (30000 mc/feas, 100000 kyfan)");
  bench->add_option("--seed", plan.seed, "instance seed");
  bench->add_option("--data", plan.data_path, "sparse dataset for kyfan")->check(CLI::ExistingFile);
  bench->add_option("--out", plan.csv_path, "CSV destination");
  bench->add_option("--safety", plan.safety, "fraction of the stepsize bound")->check(CLI::Range(0.0, 1.0));
  bench->add_option("--stride", plan.stride, "evaluate the stopping measure every this many steps")
      ->check(CLI::PositiveNumber);
  bench->add_flag("--scale-columns", plan.scale_columns, "scale dataset columns to unit norm");

  // bounds -----------------------------------------------------------------
  BoundSweep sweep;
  std::string bound = "ours", grid = "lh-rho", bounds_out;
  auto* bounds = app.add_subcommand("bounds", "Tabulate normalized stepsize bounds on a grid");
  bounds->add_option("--bound", bound, "ours or bian-zhang")->check(CLI::IsMember({"ours", "bian-zhang"}));
  bounds->add_option("--grid", grid, "lh-rho (L_h/L_f, rho_f/L_f) or sigma-lh (sigma_f/L_f, L_h/L_f)")
      ->check(CLI::IsMember({"lh-rho", "sigma-lh"}));
  bounds->add_option("--tau", sweep.tau, "relaxation")->check(CLI::PositiveNumber);
  bounds->add_option("--nx", sweep.nx, "intervals along x")->check(CLI::PositiveNumber);
  bounds->add_option("--ny", sweep.ny, "intervals along y")->check(CLI::PositiveNumber);
  bounds->add_option("--x-max", sweep.x_max, "largest x")->check(CLI::PositiveNumber);
  bounds->add_option("--y-max", sweep.y_max, "largest y")->check(CLI::PositiveNumber);
  bounds->add_option("--sigma-h", sweep.sigma_h_ratio, "sigma_h as a multiple of L_h (default -1)");
  bounds->add_option("--rho-h", sweep.rho_h_ratio, "rho_h as a multiple of L_h (default 1)");
  bounds->add_option("--out", bounds_out, "CSV destination (stdout when omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*bench) {
      plan.problem = parse_problem_kind(problem);
      bool four_split = presets.empty();
      for (const std::string& p : presets) {
        const PresetName name = parse_preset_name(p);
        if (name == PresetName::kFourSplit)
          four_split = true;  // expanded from --tau below
        else
          plan.cells.push_back({name, 1.0});
      }
      if (four_split || !taus.empty()) {
        if (taus.empty()) taus.push_back(1.0);
        for (double t : taus) plan.cells.push_back({PresetName::kFourSplit, t});
      }
      const std::string csv = plan.csv_path;
      plan.csv_path.clear();
      const auto rows = run_benchmark(plan);
      std::cout << "# problem=" << problem << " seed=" << plan.seed << " eps=" << plan.eps
                << (plan.scale_columns ? " columns=unit-norm" : " columns=as-parsed") << '\n';
      for (const auto& r : rows) std::cout << "# " << r.cell << ": " << r.note << '\n';
      emit_report(rows, std::cout, csv);
    } else {
      sweep.grid = grid == "lh-rho" ? BoundGrid::kLhRho : BoundGrid::kSigmaLh;
      sweep.selector = bound == "ours" ? BoundSelector::kOurs : BoundSelector::kBianZhang;
      const std::string csv = format_bounds_csv(sweep_stepsize_bounds(sweep));
      if (bounds_out.empty()) {
        std::cout << csv;
      } else {
        std::ofstream out(bounds_out);
        if (!out) throw IoError("cannot write '" + bounds_out + "'");
        out << csv;
      }
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
