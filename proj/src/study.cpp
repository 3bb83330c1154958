#include "fclust/study.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>
#include <tuple>

#include "fclust/error.hpp"
#include "fclust/metrics.hpp"
#include "fclust/summarize.hpp"

namespace fclust {
namespace fs = std::filesystem;
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string num(double x) {
  if (std::isnan(x)) return "NaN";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string seconds(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

std::string file_safe(std::string_view name) {
  std::string out(name);
  for (char& c : out)
    if (c == '+') c = '-';
  return out;
}

std::string csv_escape(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  return s;
}

void run_parallel(std::size_t jobs, std::size_t workers, const std::function<void(std::size_t)>& job) {
  workers = std::max<std::size_t>(1, std::min(workers, jobs));
  if (workers == 1) {
    for (std::size_t j = 0; j < jobs; ++j) job(j);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t j = next++; j < jobs; j = next++) {
        try {
          job(j);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

void write_trace(const std::string& path, const FitOutcome& fit) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write trace '" + path + "'");
  out << "iteration,K,tau_y2,tau_mu2,nu,ell_y,ell_mu\n";
  for (const TraceDraw& d : fit.trace.draws)
    out << d.iteration << ',' << d.partition.K << ',' << num(d.tau_y2) << ',' << num(d.tau_mu2) << ',' << num(d.nu)
        << ',' << num(d.ell_y) << ',' << num(d.ell_mu) << '\n';
  out << "# point_estimate";
  for (std::size_t z : fit.point_estimate.z) out << ' ' << z;
  out << '\n';
}

struct Job {
  NoiseDesign design;
  std::size_t m;
  std::size_t replicate;
};

std::vector<Job> dataset_jobs(const ExperimentConfig& cfg) {
  std::vector<Job> jobs;
  for (NoiseDesign d : cfg.designs)
    for (std::size_t m : cfg.ms)
      for (std::size_t r = 0; r < cfg.replicates; ++r) jobs.push_back({d, m, r});
  return jobs;
}

FunctionalDataset make_dataset(const ExperimentConfig& cfg, const Job& job) {
  const SimDesign design = sim_design(cfg, job.design, job.m, job.replicate);
  RngStream rng(design.seed);
  return generate(design, rng);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_cell(const std::string& s) {
  if (s == "NaN" || s == "nan") return kNaN;
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw ParameterError("malformed number '" + s + "' in results");
  return v;
}

}  // namespace

FitOutcome fit_dataset(const FunctionalDataset& data, Method method, const ExperimentConfig& cfg,
                       std::size_t replicate) {
  FitOutcome out;
  ResultRow& row = out.row;
  row.method = method;
  row.design = data.design.noise;
  row.m = data.design.m;
  row.replicate = replicate;
  row.seed = chain_seed(data.design.seed, method);
  const SamplerConfig scfg = sampler_config(cfg, method, row.seed);
  RngStream rng(row.seed);
  try {
    const auto start = std::chrono::steady_clock::now();
    out.trace = run_chain(data.y, data.grid, scfg, rng);
    row.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::vector<PartitionSample> parts;
    parts.reserve(out.trace.draws.size());
    for (const TraceDraw& d : out.trace.draws) parts.push_back(d.partition);
    out.point_estimate = vi_point_estimate(parts);
    row.point_estimate_K = out.point_estimate.K;
    row.post_mean_K = posterior_mean_K(parts);
    row.ari = adjusted_rand_index(data.z_true, out.point_estimate.z);
    row.purity = purity(data.z_true, out.point_estimate.z);
    const std::vector<Vector> theta_hat = estimate_cluster_means(out.trace, data.y, data.grid, out.point_estimate);
    row.rmse_theta = rmse_theta(theta_hat, out.point_estimate.z, data.theta_true, data.z_true);
  } catch (const std::exception& e) {
    row.failed = true;
    row.failure = e.what();
    if (const auto* aborted = dynamic_cast<const ChainAborted*>(&e)) row.failed_iteration = aborted->iteration();
    row.post_mean_K = row.ari = row.purity = row.rmse_theta = kNaN;
  }
  if (!cfg.report_wall_clock) row.wall_seconds = 0.0;
  return out;
}

std::string dataset_filename(NoiseDesign design, std::size_t m, std::size_t replicate) {
  return std::string(to_string(design)) + "_m" + std::to_string(m) + "_r" + std::to_string(replicate) + ".txt";
}

std::vector<FitOutcome> run_study(const ExperimentConfig& cfg, std::size_t workers, const std::string& dataset_dir) {
  cfg.validate();
  const std::vector<Job> datasets = dataset_jobs(cfg);
  const std::size_t per = cfg.methods.size();
  std::vector<FitOutcome> out(datasets.size() * per);
  std::vector<std::optional<FunctionalDataset>> cache(datasets.size());
  std::vector<std::once_flag> loaded(datasets.size());
  run_parallel(out.size(), workers, [&](std::size_t j) {
    const std::size_t d = j / per;
    std::call_once(loaded[d], [&] {
      const Job& job = datasets[d];
      const std::string path =
          dataset_dir.empty() ? std::string() : (fs::path(dataset_dir) / dataset_filename(job.design, job.m, job.replicate)).string();
      cache[d] = !path.empty() && fs::exists(path) ? read_dataset_file(path) : make_dataset(cfg, job);
    });
    out[j] = fit_dataset(*cache[d], cfg.methods[j % per], cfg, datasets[d].replicate);
  });
  return out;
}

std::string format_result_row(const ResultRow& r) {
  return std::string(to_string(r.method)) + ',' + std::string(to_string(r.design)) + ',' + std::to_string(r.m) + ',' +
         std::to_string(r.replicate) + ',' + num(r.post_mean_K) + ',' + num(r.ari) + ',' + num(r.purity) + ',' +
         num(r.rmse_theta) + ',' + seconds(r.wall_seconds) + ',' + std::to_string(r.seed);
}

std::vector<ResultRow> read_results(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open results '" + path + "'");
  std::string line;
  if (!std::getline(in, line) || line != kResultsHeader) throw ParameterError("results file has an unexpected header");
  std::vector<ResultRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> c = split_csv(line);
    if (c.size() != 10) throw ParameterError("results row with " + std::to_string(c.size()) + " fields");
    ResultRow r;
    r.method = parse_method(c[0]);
    r.design = parse_noise_design(c[1]);
    r.m = std::stoul(c[2]);
    r.replicate = std::stoul(c[3]);
    r.post_mean_K = parse_cell(c[4]);
    r.ari = parse_cell(c[5]);
    r.purity = parse_cell(c[6]);
    r.rmse_theta = parse_cell(c[7]);
    r.wall_seconds = parse_cell(c[8]);
    r.seed = std::stoull(c[9]);
    r.failed = std::isnan(r.post_mean_K);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<std::string> cmd_simulate(const ExperimentConfig& cfg, const std::string& out_dir, std::size_t workers) {
  cfg.validate();
  const fs::path dir = fs::path(out_dir) / "datasets";
  fs::create_directories(dir);
  const std::vector<Job> jobs = dataset_jobs(cfg);
  std::vector<std::string> paths(jobs.size());
  run_parallel(jobs.size(), workers, [&](std::size_t j) {
    paths[j] = (dir / dataset_filename(jobs[j].design, jobs[j].m, jobs[j].replicate)).string();
    write_dataset_file(paths[j], make_dataset(cfg, jobs[j]));
  });
  return paths;
}

std::vector<ResultRow> cmd_fit(const ExperimentConfig& cfg, const std::string& out_dir, std::size_t workers) {
  const fs::path dir(out_dir);
  fs::create_directories(dir);
  const std::vector<FitOutcome> fits = run_study(cfg, workers, (dir / "datasets").string());
  std::ofstream results(dir / "results.csv", std::ios::binary);
  std::ofstream failures(dir / "failures.csv", std::ios::binary);
  if (!results || !failures) throw std::runtime_error("cannot write results under '" + out_dir + "'");
  results << kResultsHeader << '\n';
  failures << "method,design,m,replicate,seed,iteration,reason\n";
  if (cfg.write_traces) fs::create_directories(dir / "traces");
  std::vector<ResultRow> rows;
  for (const FitOutcome& f : fits) {
    const ResultRow& r = f.row;
    results << format_result_row(r) << '\n';
    if (r.failed)
      failures << to_string(r.method) << ',' << to_string(r.design) << ',' << r.m << ',' << r.replicate << ','
               << r.seed << ',' << r.failed_iteration << ',' << csv_escape(r.failure) << '\n';
    else if (cfg.write_traces)
      write_trace((dir / "traces" /
                   (file_safe(to_string(r.method)) + "_" + std::string(to_string(r.design)) + "_m" +
                    std::to_string(r.m) + "_r" + std::to_string(r.replicate) + ".csv"))
                      .string(),
                  f);
    rows.push_back(r);
  }
  if (!results) throw std::runtime_error("failed writing results.csv");
  return rows;
}

std::vector<SummaryRow> aggregate(const std::vector<ResultRow>& rows) {
  using Key = std::tuple<Method, NoiseDesign, std::size_t>;
  std::map<Key, std::size_t> index;
  std::vector<SummaryRow> out;
  std::vector<std::vector<std::vector<double>>> values;
  for (const ResultRow& r : rows) {
    const Key key{r.method, r.design, r.m};
    auto [it, inserted] = index.try_emplace(key, out.size());
    if (inserted) {
      SummaryRow s;
      s.method = r.method;
      s.design = r.design;
      s.m = r.m;
      out.push_back(s);
      values.emplace_back(5);
    }
    SummaryRow& s = out[it->second];
    ++s.rows;
    if (r.failed || std::isnan(r.post_mean_K)) {
      ++s.failed;
      continue;
    }
    const double v[5] = {r.post_mean_K, r.ari, r.purity, r.rmse_theta, r.wall_seconds};
    for (int k = 0; k < 5; ++k) values[it->second][k].push_back(v[k]);
  }
  for (std::size_t g = 0; g < out.size(); ++g) {
    for (const std::vector<double>& v : values[g]) {
      if (v.empty()) {
        out[g].mean.push_back(kNaN);
        out[g].sd.push_back(kNaN);
        continue;
      }
      // Offsets from the first value keep equal inputs exact.
      double shift = 0.0;
      for (double x : v) shift += x - v.front();
      const double mean = v.front() + shift / static_cast<double>(v.size());
      double ss = 0.0;
      for (double x : v) ss += (x - mean) * (x - mean);
      out[g].mean.push_back(mean);
      out[g].sd.push_back(v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0);
    }
  }
  return out;
}

std::vector<SummaryRow> cmd_aggregate(const std::string& results, const std::string& out_dir,
                                      std::size_t expected_replicates) {
  const fs::path in = fs::is_directory(results) ? fs::path(results) / "results.csv" : fs::path(results);
  const std::vector<SummaryRow> summary = aggregate(read_results(in.string()));
  fs::create_directories(out_dir);
  std::ofstream out(fs::path(out_dir) / "summary.csv", std::ios::binary);
  if (!out) throw std::runtime_error("cannot write summary.csv");
  out << "method,design,m,rows,failed,missing";
  for (const char* metric : {"post_mean_K", "ari", "purity", "rmse_theta", "wall_seconds"})
    out << ',' << metric << "_mean," << metric << "_sd";
  out << '\n';
  for (const SummaryRow& s : summary) {
    const std::size_t missing = expected_replicates > s.rows ? expected_replicates - s.rows : 0;
    if (s.failed > 0 || missing > 0)
      std::cerr << "warning: " << to_string(s.method) << ' ' << to_string(s.design) << " m=" << s.m << ": "
                << s.failed << " failed, " << missing << " missing rows\n";
    out << to_string(s.method) << ',' << to_string(s.design) << ',' << s.m << ',' << s.rows << ',' << s.failed << ','
        << missing;
    for (std::size_t k = 0; k < s.mean.size(); ++k) out << ',' << num(s.mean[k]) << ',' << num(s.sd[k]);
    out << '\n';
  }
  return summary;
}

std::vector<TheoryRow> cmd_theory(const ExperimentConfig& cfg, const std::string& out_dir) {
  TheoryConfig tcfg = cfg.theory;
  tcfg.seed = cfg.seed;
  const std::vector<TheoryRow> rows = run_theory_lab(tcfg);
  fs::create_directories(out_dir);
  std::ofstream out(fs::path(out_dir) / "theory.csv", std::ios::binary);
  if (!out) throw std::runtime_error("cannot write theory.csv");
  out << "experiment,m,statistic,value,seed\n";
  for (const TheoryRow& r : rows)
    out << r.experiment << ',' << r.m << ',' << r.statistic << ',' << num(r.value) << ',' << r.seed << '\n';
  return rows;
}

}  // namespace fclust
