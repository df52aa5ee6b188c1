#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "foursplit/benchmark.hpp"

using namespace foursplit;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

// Removes the third field (time_s) from every CSV line.
std::string drop_time_column(const std::string& csv) {
  std::string cleaned;
  for (const auto& line : lines_of(csv)) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
    if (fields.size() > 2) fields.erase(fields.begin() + 2);
    for (std::size_t i = 0; i < fields.size(); ++i) cleaned += (i ? "," : "") + fields[i];
    cleaned += '\n';
  }
  return cleaned;
}

BenchmarkPlan small_mc_plan() {
  BenchmarkPlan plan;
  plan.problem = ProblemKind::kMatrixCompletion;
  plan.n = 25;
  plan.r = 3;
  plan.s = 180;
  plan.eps = 1e-5;
  plan.cells = {{PresetName::kDys, 1.0}, {PresetName::kFourSplit, 1.7}, {PresetName::kPg, 1.0}};
  return plan;
}

}  // namespace

TEST(Csv, HeaderAndFlags) {
  ResultRow ok{"DYS", 12, 0.5, 1.25, 3e-7, RowFlag::kConverged, "", {}};
  ResultRow cap{"FOUR_SPLIT(tau=1.9)", 100, 1.0, 2.0, 1e-3, RowFlag::kCapped, "", {}};
  ResultRow skip{"PG", 0, 0.0, 0.0, 0.0, RowFlag::kInapplicable, "", {}};
  const auto l = lines_of(format_csv({ok, cap, skip}));
  ASSERT_EQ(l.size(), 4u);
  EXPECT_EQ(l[0], "cell,iter,time_s,objective,measure,flag");
  EXPECT_EQ(l[1].rfind("DYS,12,", 0), 0u);
  EXPECT_EQ(l[1].substr(l[1].rfind(',') + 1), "converged");
  EXPECT_EQ(l[2].substr(l[2].rfind(',') + 1), "capped");
  EXPECT_EQ(l[3].substr(l[3].rfind(',') + 1), "inapplicable");
  EXPECT_NE(format_table({cap}).find('*'), std::string::npos);
}

TEST(Csv, SingleRow) {
  ResultRow ok{"DYS", 3, 0.1, 1.0, 1e-7, RowFlag::kConverged, "", {}};
  EXPECT_EQ(lines_of(format_csv({ok})).size(), 2u);
}

TEST(Report, UnwritableDestination) {
  ResultRow ok{"DYS", 3, 0.1, 1.0, 1e-7, RowFlag::kConverged, "", {}};
  std::ostringstream table;
  EXPECT_THROW(emit_report({ok}, table, "/nonexistent/dir/out.csv"), IoError);
}

TEST(Run, DeterministicApartFromTime) {
  const auto plan = small_mc_plan();
  const auto a = format_csv(run_benchmark(plan));
  const auto b = format_csv(run_benchmark(plan));
  EXPECT_EQ(drop_time_column(a), drop_time_column(b));
}

TEST(Run, ConvergedRowsRecheck) {
  const auto plan = small_mc_plan();
  const auto rows = run_benchmark(plan);
  const ProblemSpec spec = build_problem(plan);
  const auto stop = make_stopping(spec.params, plan.eps, 1);
  for (const auto& row : rows) {
    ASSERT_EQ(row.flag, RowFlag::kConverged) << row.cell;
    EXPECT_LE(row.measure, plan.eps);
    EXPECT_LE(stationarity_measure(spec, stop.reference, row.final_y), plan.eps) << row.cell;
  }
  EXPECT_LT(rows[1].iterations, rows[0].iterations);
}

TEST(Run, CappedRowsAreFlagged) {
  auto plan = small_mc_plan();
  plan.max_iter = 5;
  for (const auto& row : run_benchmark(plan)) EXPECT_EQ(row.flag, RowFlag::kCapped);
}

TEST(Run, InfeasibleTauIsSkipped) {
  BenchmarkPlan plan;
  plan.problem = ProblemKind::kKyFan;
  plan.n = 10;
  plan.m = 12;  // sigma_f small relative to lambda1 = 5
  plan.lambda1 = 50.0;
  plan.cells = {{PresetName::kFourSplit, 2.0}, {PresetName::kPg, 1.0}, {PresetName::kFourSplit, 1.0}};
  plan.max_iter = 50;
  const auto rows = run_benchmark(plan);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].flag, RowFlag::kInapplicable);
  EXPECT_EQ(rows[1].flag, RowFlag::kInapplicable);
  EXPECT_NE(rows[2].flag, RowFlag::kInapplicable);
}

TEST(Run, DefaultCaps) {
  EXPECT_EQ(default_max_iter(ProblemKind::kMatrixCompletion), 30000);
  EXPECT_EQ(default_max_iter(ProblemKind::kKyFan), 100000);
}

TEST(Run, FeasibilityDemoConverges) {
  BenchmarkPlan plan;
  plan.problem = ProblemKind::kFeasibility;
  plan.n = 5;
  plan.cells = {{PresetName::kFourSplit, 1.0}, {PresetName::kFourSplit, 1.5}, {PresetName::kPdc, 1.0}};
  for (const auto& row : run_benchmark(plan)) EXPECT_EQ(row.flag, RowFlag::kConverged) << row.cell;
}

TEST(Bounds, CaseOneNode) {
  BoundSweep sw;
  sw.nx = 4;
  sw.ny = 2;
  sw.x_max = 2.0;
  sw.y_max = 1.0;
  const auto nodes = sweep_stepsize_bounds(sw);
  ASSERT_EQ(nodes.size(), 15u);
  bool found = false;
  for (const auto& n : nodes)
    if (n.x == 0.5 && n.y == 0.0) {
      EXPECT_NEAR(n.value, 1.0 / 1.5, 1e-12);
      found = true;
    }
  EXPECT_TRUE(found);
}

TEST(Bounds, CompletionNodeBothSelectors) {
  BoundSweep sw;
  sw.nx = 10;
  sw.ny = 1;
  sw.x_max = 1.0;
  sw.y_max = 1.0;
  const auto ours = sweep_stepsize_bounds(sw);
  sw.selector = BoundSelector::kBianZhang;
  const auto bz = sweep_stepsize_bounds(sw);
  for (std::size_t i = 0; i < ours.size(); ++i) {
    if (std::abs(ours[i].x - 0.1) < 1e-12 && ours[i].y == 0.0) {
      EXPECT_NEAR(ours[i].value, 1.0 / 1.1, 1e-12);
      EXPECT_NEAR(bz[i].value, 0.213896949848536, 1e-9);
    }
  }
}

TEST(Bounds, OursDominatesBianZhang) {
  for (auto grid : {BoundGrid::kLhRho, BoundGrid::kSigmaLh}) {
    BoundSweep sw;
    sw.grid = grid;
    sw.nx = 25;
    sw.ny = 25;
    sw.x_max = grid == BoundGrid::kLhRho ? 3.0 : 1.0;
    sw.y_max = grid == BoundGrid::kLhRho ? 0.9 : 3.0;
    const auto ours = sweep_stepsize_bounds(sw);
    sw.selector = BoundSelector::kBianZhang;
    const auto bz = sweep_stepsize_bounds(sw);
    ASSERT_EQ(ours.size(), bz.size());
    for (std::size_t i = 0; i < ours.size(); ++i) {
      if (std::isnan(bz[i].value)) continue;
      ASSERT_FALSE(std::isnan(ours[i].value)) << ours[i].x << "," << ours[i].y;
      EXPECT_GE(ours[i].value, bz[i].value - 1e-12) << ours[i].x << "," << ours[i].y;
    }
  }
}

TEST(Bounds, CaseOneRegionIsExact) {
  BoundSweep sw;
  sw.nx = 21;
  sw.ny = 21;
  sw.x_max = 1.0;
  sw.y_max = 0.5;
  for (const auto& n : sweep_stepsize_bounds(sw)) {
    if (n.x + 2.0 * n.y <= 1.0) EXPECT_NEAR(n.value, 1.0 / (1.0 + n.x), 1e-12) << n.x << "," << n.y;
  }
}

TEST(Bounds, CsvShape) {
  BoundSweep sw;
  sw.nx = 2;
  sw.ny = 1;
  const auto l = lines_of(format_bounds_csv(sweep_stepsize_bounds(sw)));
  EXPECT_EQ(l.size(), 7u);  // header plus 3 x 2 nodes
}

TEST(Problems, KindNames) {
  EXPECT_EQ(parse_problem_kind("mc"), ProblemKind::kMatrixCompletion);
  EXPECT_EQ(parse_problem_kind("kyfan"), ProblemKind::kKyFan);
  EXPECT_EQ(parse_problem_kind("feas"), ProblemKind::kFeasibility);
  EXPECT_THROW(parse_problem_kind("lasso"), ArgumentError);
}
