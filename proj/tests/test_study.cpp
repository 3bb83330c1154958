#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fclust/study.hpp"

using namespace fclust;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("fclust_test_" + name);
  fs::remove_all(p);
  return p;
}

ResultRow row_with(double k, double ari) {
  ResultRow r;
  r.method = Method::DP_GP;
  r.design = NoiseDesign::Exp10;
  r.m = 16;
  r.post_mean_K = k;
  r.ari = ari;
  r.purity = 1.0;
  r.rmse_theta = 0.1;
  r.wall_seconds = 2.0;
  return r;
}

}  // namespace

TEST(Study, SmokeFitWritesFiveRows) {
  ExperimentConfig cfg = preset_config("smoke");
  cfg.report_wall_clock = false;
  const fs::path a = scratch("smoke_a"), b = scratch("smoke_b");
  const auto rows = cmd_fit(cfg, a.string(), 1);
  ASSERT_EQ(rows.size(), 5u);
  for (const auto& r : rows) {
    EXPECT_FALSE(r.failed);
    EXPECT_EQ(r.point_estimate_K, 2u);
    EXPECT_EQ(r.wall_seconds, 0.0);
  }
  const std::string results = slurp(a / "results.csv");
  EXPECT_EQ(results.substr(0, results.find('\n')), kResultsHeader);
  EXPECT_TRUE(fs::exists(a / "failures.csv"));
  EXPECT_EQ(std::distance(fs::directory_iterator(a / "traces"), fs::directory_iterator()), 5);

  cmd_fit(cfg, b.string(), 2);
  EXPECT_EQ(slurp(b / "results.csv"), results);
  for (const auto& entry : fs::directory_iterator(a / "traces"))
    EXPECT_EQ(slurp(entry.path()), slurp(b / "traces" / entry.path().filename()));

  const auto back = read_results((a / "results.csv").string());
  ASSERT_EQ(back.size(), 5u);
  EXPECT_EQ(format_result_row(back[3]), format_result_row(rows[3]));
}

TEST(Study, SimulateFileCountAndReuse) {
  ExperimentConfig cfg = preset_config("smoke");
  cfg.designs = all_noise_designs();
  const fs::path out = scratch("simulate");
  const auto paths = cmd_simulate(cfg, out.string(), 1);
  EXPECT_EQ(paths.size(), 5u);
  const std::string first = slurp(paths[0]);
  cmd_simulate(cfg, out.string(), 2);
  EXPECT_EQ(slurp(paths[0]), first);
  EXPECT_EQ(fs::path(paths[0]).filename().string(), dataset_filename(NoiseDesign::IID, 8, 0));
}

TEST(Study, FitReadsSimulatedDatasets) {
  ExperimentConfig cfg = preset_config("smoke");
  cfg.methods = {Method::DP_IID};
  cfg.report_wall_clock = false;
  const fs::path out = scratch("reuse");
  cmd_simulate(cfg, out.string(), 1);
  const auto from_file = run_study(cfg, 1, (out / "datasets").string());
  const auto in_memory = run_study(cfg, 1);
  ASSERT_EQ(from_file.size(), 1u);
  EXPECT_EQ(format_result_row(from_file[0].row), format_result_row(in_memory[0].row));
}

TEST(Aggregate, SingleRowHasZeroSd) {
  const auto s = aggregate({row_with(3.0, 0.5)});
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].mean[0], 3.0);
  EXPECT_EQ(s[0].sd[0], 0.0);
}

TEST(Aggregate, SampleStandardDeviation) {
  const auto s = aggregate({row_with(1.0, 0.5), row_with(3.0, 0.5)});
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].rows, 2u);
  EXPECT_DOUBLE_EQ(s[0].mean[0], 2.0);
  EXPECT_DOUBLE_EQ(s[0].sd[0], std::sqrt(2.0));
}

TEST(Aggregate, CopiesOfOneRow) {
  const ResultRow r = row_with(2.4, 0.8);
  const auto s = aggregate(std::vector<ResultRow>(7, r));
  ASSERT_EQ(s.size(), 1u);
  EXPECT_DOUBLE_EQ(s[0].mean[1], 0.8);
  for (double sd : s[0].sd) EXPECT_EQ(sd, 0.0);
}

TEST(Aggregate, FailedRowsCountedAndSkipped) {
  ResultRow bad = row_with(NAN, NAN);
  bad.failed = true;
  const auto s = aggregate({row_with(2.0, 1.0), bad});
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].failed, 1u);
  EXPECT_EQ(s[0].mean[0], 2.0);
}

TEST(Aggregate, GroupsPerMethodDesignAndM) {
  std::vector<ResultRow> rows;
  for (Method m : all_methods())
    for (NoiseDesign d : all_noise_designs())
      for (std::size_t grid : {8, 16, 32, 64}) {
        ResultRow r = row_with(2.0, 1.0);
        r.method = m;
        r.design = d;
        r.m = grid;
        rows.push_back(r);
        rows.push_back(r);
      }
  EXPECT_EQ(aggregate(rows).size(), 100u);
}

TEST(Theory, CommandWritesReport) {
  ExperimentConfig cfg = preset_config("smoke");
  const fs::path out = scratch("theory");
  const auto rows = cmd_theory(cfg, out.string());
  EXPECT_FALSE(rows.empty());
  const std::string text = slurp(out / "theory.csv");
  EXPECT_EQ(text.substr(0, text.find('\n')), "experiment,m,statistic,value,seed");
  bool saw_critical = false;
  for (const auto& r : rows) {
    if (r.experiment == "untruncated_control" && r.statistic == "max_abs_log_ratio") EXPECT_LT(r.value, 1e-9);
    if (r.experiment == "logdet_nu1_kappa3" && r.statistic == "L_over_m") {
      EXPECT_NEAR(r.value, std::log(2.0), 1e-12);
      saw_critical = true;
    }
  }
  EXPECT_TRUE(saw_critical);
}
