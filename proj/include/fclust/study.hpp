#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fclust/config.hpp"
#include "fclust/sampler.hpp"
#include "fclust/simgen.hpp"

namespace fclust {

inline constexpr const char* kResultsHeader =
    "method,design,m,replicate,post_mean_K,ari,purity,rmse_theta,wall_seconds,seed";

/// One fitted chain. Metrics are NaN when the chain failed.
struct ResultRow {
  Method method = Method::DP_IID;
  NoiseDesign design = NoiseDesign::IID;
  std::size_t m = 0;
  std::size_t replicate = 0;
  double post_mean_K = 0.0;
  double ari = 0.0;
  double purity = 0.0;
  double rmse_theta = 0.0;
  double wall_seconds = 0.0;
  std::uint64_t seed = 0;
  // Not part of the CSV.
  std::size_t point_estimate_K = 0;
  bool failed = false;
  std::string failure;
  std::size_t failed_iteration = 0;
};

/// Outcome of fitting one method to one dataset.
struct FitOutcome {
  ResultRow row;
  ChainTrace trace;
  PartitionSample point_estimate;
};

/// Runs one chain and every summary. Chain failures come back as a failed row.
FitOutcome fit_dataset(const FunctionalDataset& data, Method method, const ExperimentConfig& cfg,
                       std::size_t replicate);

/// Fits every (design, m, replicate, method) in that nesting order on
/// `workers` threads. Datasets are generated in memory unless a dataset
/// directory is given and holds the file.
std::vector<FitOutcome> run_study(const ExperimentConfig& cfg, std::size_t workers,
                                  const std::string& dataset_dir = "");

std::string dataset_filename(NoiseDesign design, std::size_t m, std::size_t replicate);
std::string format_result_row(const ResultRow& row);
std::vector<ResultRow> read_results(const std::string& path);

/// Writes datasets/<design>_m<m>_r<rep>.txt under out_dir; returns the paths.
std::vector<std::string> cmd_simulate(const ExperimentConfig& cfg, const std::string& out_dir, std::size_t workers);
/// Writes results.csv, failures.csv and traces/ under out_dir.
std::vector<ResultRow> cmd_fit(const ExperimentConfig& cfg, const std::string& out_dir, std::size_t workers);

struct SummaryRow {
  Method method = Method::DP_IID;
  NoiseDesign design = NoiseDesign::IID;
  std::size_t m = 0;
  std::size_t rows = 0;
  std::size_t failed = 0;
  std::vector<double> mean;  // post_mean_K, ari, purity, rmse_theta, wall_seconds
  std::vector<double> sd;    // sample standard deviation; 0 for a single row
};

/// Mean and sample sd per (method, design, m), in first-appearance order.
/// Failed (NaN) rows are counted and skipped.
std::vector<SummaryRow> aggregate(const std::vector<ResultRow>& rows);
/// Reads out_dir/results.csv (or the given file) and writes out_dir/summary.csv.
std::vector<SummaryRow> cmd_aggregate(const std::string& results, const std::string& out_dir,
                                      std::size_t expected_replicates = 0);
/// Writes out_dir/theory.csv.
std::vector<TheoryRow> cmd_theory(const ExperimentConfig& cfg, const std::string& out_dir);

}  // namespace fclust
