// Runs the acceptance criteria and prints one verdict line per criterion.
// Exit status: 0 when every selected criterion passes, 1 otherwise.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "fclust/blinalg.hpp"
#include "fclust/gauss.hpp"
#include "fclust/metrics.hpp"
#include "fclust/rng.hpp"
#include "fclust/study.hpp"
#include "fclust/summarize.hpp"
#include "fclust/theory.hpp"
#include "oracles.hpp"

using namespace fclust;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

double rel_err(double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

double rel_err(const Vector& got, const Vector& want) { return (got - want).norm() / std::max(1.0, want.norm()); }

// Linear algebra against Eigen's dense Cholesky.
Verdict criterion1() {
  Stopwatch clock;
  RngStream rng(20240101);
  double worst = 0.0;
  int cases = 0;
  const std::size_t ms[] = {4, 16, 64};
  for (int t = 0; t < 200; ++t) {
    const std::size_t m = ms[t % 3];
    const std::size_t rs[] = {1, 3, m - 1};
    const std::size_t r = std::min(rs[(t / 3) % 3], m - 1);
    Matrix a = Matrix::Zero(m, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j <= std::min(m - 1, i + r); ++j) a(i, j) = a(j, i) = 2 * rng.uniform() - 1;
    for (std::size_t i = 0; i < m; ++i) a(i, i) = a.row(i).cwiseAbs().sum() + 0.1 + rng.uniform();
    const Eigen::LLT<Matrix> llt(a);
    const Matrix l_dense = llt.matrixL();
    const CholeskyFactor f = banded_cholesky(BandedSPD::from_dense(a, r));
    const Vector b = standard_normal(static_cast<Eigen::Index>(m), rng);
    const Vector x = llt.solve(b);
    double dense_logdet = 0.0;
    for (std::size_t i = 0; i < m; ++i) dense_logdet += 2 * std::log(l_dense(i, i));
    worst = std::max({worst, (f.to_dense() - l_dense).norm() / l_dense.norm(), rel_err(f.logdet(), dense_logdet),
                      rel_err(f.solve(b), x), rel_err(f.quad_form(b), b.dot(x))});
    ++cases;
  }
  const double secs = clock.seconds();
  return {worst <= 1e-9 && secs < 10,
          fmt("%d matrices, worst relative error %.2e (tol 1e-9), %.2f s (limit 10 s)", cases, worst, secs)};
}

// Metrics against brute-force oracles on every partition pair with n <= 6.
Verdict criterion2() {
  std::size_t pairs = 0, count_mismatch = 0;
  double worst_ari = 0.0, worst_vi = 0.0;
  bool purity_exact = true;
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto parts = oracle::all_partitions(n);
    for (const auto& a : parts)
      for (const auto& b : parts) {
        ++pairs;
        const ContingencyTable t = contingency_table(a, b);
        for (std::size_t i = 0; i < t.rows; ++i)
          for (std::size_t j = 0; j < t.cols; ++j) {
            std::size_t direct = 0;
            for (std::size_t k = 0; k < n; ++k) direct += a[k] == i && b[k] == j;
            count_mismatch += direct != t(i, j);
          }
        if (n >= 2) worst_ari = std::max(worst_ari, std::abs(adjusted_rand_index(a, b) - oracle::pair_count_ari(a, b)));
        purity_exact = purity_exact && purity(a, b) == oracle::majority_purity(a, b);
        worst_vi = std::max(worst_vi, std::abs(variation_of_information(a, b) - oracle::entropy_vi(a, b)));
      }
  }
  const double ari_fixed = adjusted_rand_index({0, 0, 1, 1}, {0, 1, 0, 1});
  const double vi_fixed = variation_of_information(Labels{0, 0, 0, 0}, Labels{0, 1, 2, 3});
  const bool pass = count_mismatch == 0 && purity_exact && worst_ari <= 1e-12 && worst_vi <= 1e-12 &&
                    std::abs(ari_fixed + 0.5) <= 1e-12 && std::abs(vi_fixed - std::log(4.0)) <= 1e-12;
  return {pass, fmt("%zu pairs, count mismatches %zu, purity exact %s, ARI err %.1e, VI err %.1e, "
                    "ARI fixed %.15g, VI fixed %.15g",
                    pairs, count_mismatch, purity_exact ? "yes" : "no", worst_ari, worst_vi, ari_fixed, vi_fixed)};
}

ExperimentConfig scaled_study(std::vector<NoiseDesign> designs, std::vector<std::size_t> ms,
                              std::vector<Method> methods) {
  ExperimentConfig cfg = preset_config("default");
  cfg.designs = std::move(designs);
  cfg.ms = std::move(ms);
  cfg.methods = std::move(methods);
  cfg.replicates = 10;
  cfg.iterations = 1500;  // 1000 kept draws after 500 burn-in
  cfg.burn_in = 500;
  cfg.write_traces = false;
  return cfg;
}

struct Cell {
  std::vector<const ResultRow*> rows;  // indexed by replicate
};

std::map<std::pair<Method, std::size_t>, Cell> by_method_and_m(const std::vector<FitOutcome>& fits,
                                                                std::size_t replicates) {
  std::map<std::pair<Method, std::size_t>, Cell> cells;
  for (const FitOutcome& f : fits) {
    Cell& c = cells[{f.row.method, f.row.m}];
    c.rows.resize(replicates, nullptr);
    c.rows[f.row.replicate] = &f.row;
  }
  return cells;
}

std::size_t count_k2(const Cell& c) {
  std::size_t k = 0;
  for (const ResultRow* r : c.rows) k += r && !r->failed && r->point_estimate_K == 2;
  return k;
}

double mean_of(const Cell& c, double ResultRow::*field) {
  double s = 0.0;
  for (const ResultRow* r : c.rows) s += r ? r->*field : NAN;
  return s / static_cast<double>(c.rows.size());
}

// IID panel: every method recovers two clusters.
Verdict criterion3() {
  Stopwatch clock;
  const ExperimentConfig cfg = scaled_study({NoiseDesign::IID}, {8, 32}, all_methods());
  const auto fits = run_study(cfg, 1);
  const auto cells = by_method_and_m(fits, cfg.replicates);
  bool pass = true;
  std::string detail;
  for (const auto& [key, cell] : cells) {
    const std::size_t k2 = count_k2(cell);
    const double ari = mean_of(cell, &ResultRow::ari);
    pass = pass && k2 >= 8 && ari >= 0.95;
    detail += fmt("%s m=%zu K2 %zu/10 ARI %.3f; ", std::string(to_string(key.first)).c_str(), key.second, k2, ari);
  }
  const double secs = clock.seconds();
  pass = pass && secs < 15 * 60;
  return {pass, detail + fmt("%.0f s (limit 900 s)", secs)};
}

// Correlated panel: independent errors over-cluster, correlated models do not.
Verdict criterion4() {
  const ExperimentConfig cfg =
      scaled_study({NoiseDesign::Exp10}, {8, 64}, {Method::DP_IID, Method::DP_GP, Method::Band});
  const auto fits = run_study(cfg, 1);
  const auto cells = by_method_and_m(fits, cfg.replicates);
  const auto& iid8 = cells.at({Method::DP_IID, 8});
  const auto& iid64 = cells.at({Method::DP_IID, 64});
  const double k8 = mean_of(iid8, &ResultRow::post_mean_K), k64 = mean_of(iid64, &ResultRow::post_mean_K);
  const bool a = k64 >= 3.0 && k64 > k8;
  std::string detail = fmt("(a) %s DP+IID post_mean_K m=8 %.2f m=64 %.2f; ", a ? "ok" : "FAIL", k8, k64);
  bool b = true, c = true;
  std::string bd, cd;
  for (Method method : {Method::DP_GP, Method::Band})
    for (std::size_t m : {8, 64}) {
      const Cell& cell = cells.at({method, m});
      const Cell& iid = cells.at({Method::DP_IID, m});
      const std::size_t k2 = count_k2(cell);
      const double ari = mean_of(cell, &ResultRow::ari);
      const bool ok_b = k2 >= 7 && ari >= 0.9;
      std::size_t better = 0;
      for (std::size_t r = 0; r < cfg.replicates; ++r)
        better += cell.rows[r] && iid.rows[r] && cell.rows[r]->rmse_theta < iid.rows[r]->rmse_theta;
      const bool ok_c = better >= 8;
      b = b && ok_b;
      c = c && ok_c;
      const std::string name(to_string(method));
      bd += fmt("%s %s m=%zu K2 %zu/10 ARI %.3f; ", ok_b ? "ok" : "FAIL", name.c_str(), m, k2, ari);
      cd += fmt("%s %s m=%zu RMSE below DP+IID %zu/10; ", ok_c ? "ok" : "FAIL", name.c_str(), m, better);
    }
  return {a && b && c, detail + "(b) " + bd + "(c) " + cd};
}

std::string medians(const std::vector<RatioSummary>& rows, double RatioSummary::*field) {
  std::string s;
  for (const auto& r : rows) s += fmt("m=%zu %.3g ", r.m, r.*field);
  return s;
}

RatioExperimentConfig ratio_config(LagConvention lags, AssumedModel assumed) {
  RatioExperimentConfig cfg;
  cfg.ms = {8, 16, 32, 64};
  cfg.truth = {KernelFamily::MaternHalf, 0.05, 1.0, 0.5};
  cfg.lags = lags;
  cfg.assumed = assumed;
  cfg.replicates = 200;
  return cfg;
}

// Independent working model: the new-cluster ratio diverges with m.
Verdict criterion5() {
  Stopwatch clock;
  const auto rows = run_ratio_experiment(ratio_config(LagConvention::UnitInterval, AssumedModel::IID));
  bool increasing = true;
  for (std::size_t k = 1; k < rows.size(); ++k) increasing = increasing && rows[k].median > rows[k - 1].median;
  const double secs = clock.seconds();
  const bool pass = increasing && rows.back().median > std::log(10.0) && secs < 60;
  return {pass, fmt("median log ratio %sstrictly increasing %s, m=64 %.3f vs log 10 = %.3f, %.2f s (limit 60 s)",
                    medians(rows, &RatioSummary::median).c_str(), increasing ? "yes" : "no", rows.back().median,
                    std::log(10.0), secs)};
}

// Banded working model: the ratio shrinks toward one.
Verdict criterion6() {
  const auto rows = run_ratio_experiment(ratio_config(LagConvention::IntegerLag, AssumedModel::Banded));
  const auto control = run_ratio_experiment(ratio_config(LagConvention::IntegerLag, AssumedModel::Untruncated));
  double control_max = 0.0;
  for (const auto& r : control) control_max = std::max(control_max, r.max_abs);
  const double at8 = rows.front().median_abs, at64 = rows.back().median_abs;
  const bool shrinks = at64 < at8, small = at64 < 0.5, exact = control_max < 1e-9;
  return {shrinks && small && exact,
          fmt("median |log ratio| %s(r at m=8 is %zu = m-1); m=64 below m=8 %s, below 0.5 %s; "
              "control max |log ratio| %.1e (tol 1e-9)",
              medians(rows, &RatioSummary::median_abs).c_str(), rows.front().bandwidth, shrinks ? "yes" : "no",
              small ? "yes" : "no", control_max)};
}

// Log-determinant growth classes.
Verdict criterion7() {
  Stopwatch clock;
  std::vector<std::size_t> ms;
  for (std::size_t m = 16; m <= 1024; m *= 2) ms.push_back(m);
  const double a1 = fit_growth_exponent(ms, logdet_growth(1.0, 1.0, ms), true);
  const double a3 = fit_growth_exponent(ms, logdet_growth(1.0, 3.0, ms), false);
  const double a35 = fit_growth_exponent(ms, logdet_growth(1.0, 3.5, ms), false);
  const double secs = clock.seconds();
  const bool pass = std::abs(a1 - 1.0) <= 0.1 && std::abs(a3 - 1.0) <= 0.1 && std::abs(a35 - 0.5) <= 0.1 && secs < 5;
  return {pass, fmt("exponents kappa=1 %.4f (with log factor, target 1), kappa=3 %.4f (target 1), "
                    "kappa=3.5 %.4f (target 0.5), tol 0.1, %.3f s",
                    a1, a3, a35, secs)};
}

// Band truncation error against the closed-form tail bound.
Verdict criterion8() {
  Stopwatch clock;
  bool pass = true;
  std::string detail;
  for (std::size_t r : {5, 10, 15}) {
    const BandGapRow row = band_gap(KernelFamily::MaternHalf, 128, r);
    const double expected_bound = 2 * std::exp(-static_cast<double>(r));
    pass = pass && row.gap <= row.bound && std::abs(row.bound - expected_bound) <= 1e-15;
    detail += fmt("r=%zu gap %.3e bound %.3e; ", r, row.gap, row.bound);
  }
  const double secs = clock.seconds();
  return {pass && secs < 5, detail + fmt("%.3f s", secs)};
}

// Wall time of band against DP+GP at m = 64.
Verdict criterion9() {
  ExperimentConfig cfg = preset_config("default");
  cfg.ms = {64};
  cfg.methods = {Method::DP_GP, Method::Band};
  cfg.replicates = 3;
  cfg.write_traces = false;
  const auto fits = run_study(cfg, 1);
  double band = 0.0, gp = 0.0;
  std::size_t nb = 0, ng = 0;
  for (const FitOutcome& f : fits) {
    (f.row.method == Method::Band ? band : gp) += f.row.wall_seconds;
    ++(f.row.method == Method::Band ? nb : ng);
  }
  band /= static_cast<double>(nb);
  gp /= static_cast<double>(ng);
  return {band < gp, fmt("mean wall time over %zu chains each: band %.2f s, DP+GP %.2f s", nb, band, gp)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

// Drops the wall_seconds column (second to last).
std::string without_timing(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) {
    const auto last = line.rfind(',');
    const auto before = line.rfind(',', last - 1);
    out += line.substr(0, before) + line.substr(last) + "\n";
  }
  return out;
}

// Identical configuration and seed reproduce the results file byte for byte.
Verdict criterion10() {
  const fs::path root = fs::temp_directory_path() / "fclust_acceptance_determinism";
  fs::remove_all(root);
  ExperimentConfig cfg = preset_config("smoke");
  cfg.report_wall_clock = false;
  cmd_fit(cfg, (root / "a").string(), 1);
  cmd_fit(cfg, (root / "b").string(), 2);
  const std::string a = slurp(root / "a" / "results.csv"), b = slurp(root / "b" / "results.csv");
  const bool identical = !a.empty() && a == b;
  cfg.report_wall_clock = true;
  cmd_fit(cfg, (root / "c").string(), 1);
  cmd_fit(cfg, (root / "d").string(), 1);
  const bool timed = without_timing(slurp(root / "c" / "results.csv")) ==
                     without_timing(slurp(root / "d" / "results.csv"));
  fs::remove_all(root);
  return {identical && timed,
          fmt("results.csv byte-identical with report.wall_clock=false: %s (%zu bytes); "
              "with wall clock on, all columns but wall_seconds identical: %s",
              identical ? "yes" : "no", a.size(), timed ? "yes" : "no")};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<int> selected;
  app.add_option("--criterion", selected, "Criterion number(s) 1-10; all when omitted")->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);
  if (selected.empty())
    for (int k = 1; k <= 10; ++k) selected.push_back(k);

  const std::function<Verdict()> criteria[] = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                                criterion6, criterion7, criterion8, criterion9, criterion10};
  bool all = true;
  for (int k : selected) {
    Verdict v;
    try {
      v = criteria[k - 1]();
    } catch (const std::exception& e) {
      v = {false, std::string("error: ") + e.what()};
    }
    all = all && v.pass;
    std::printf("Criterion %d: %s (%s)\n", k, v.pass ? "PASS" : "FAIL", v.detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
