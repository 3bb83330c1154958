#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fclust/blinalg.hpp"
#include "fclust/kernels.hpp"

namespace fclust {

/// log pr*(new cluster) − log pr(new cluster) for one item, where each
/// probability is α φ(y | 0, C + C_θ) / (α φ(y | 0, C + C_θ) + Σ_k n_k φ(y | θ_k, C))
/// with C = C_y_assumed for pr* and C = C_y for pr. Log space throughout.
double new_cluster_log_ratio(const Vector& y, const std::vector<Vector>& thetas, const std::vector<std::size_t>& counts,
                             double alpha, const Matrix& c_y, const Matrix& c_y_assumed, const Matrix& c_theta);

/// log pr(new cluster) with pre-factored C and C + C_θ.
double new_cluster_log_prob(const Vector& y, const std::vector<Vector>& thetas, const std::vector<std::size_t>& counts,
                            double alpha, const CholeskyFactor& c_factor, const CholeskyFactor& marginal_factor);

/// L(m) = Σ_{j≤m} log(1 + j^{2ν+1−κ}) for each m.
std::vector<double> logdet_growth(double nu, double kappa, const std::vector<std::size_t>& ms);

/// Least-squares slope of log L on log m. With log_factor, regresses
/// log(L / log m) instead, the exponent of an m^a·log m law.
double fit_growth_exponent(const std::vector<std::size_t>& ms, const std::vector<double>& values, bool log_factor);

struct SpectrumReport {
  Vector eigen_c_y;      // descending
  Vector eigen_c_theta;  // descending
  double lambda_min_c_y = 0.0;
  double lambda_min_c_theta = 0.0;
  double logdet_ratio = 0.0;     // log det(C_y + C_θ) − log det C_y
  double trace_quantity = 0.0;   // tr{(C_θ + σ²I)⁻¹(C_θ + C_y)} − tr C_y
  double operator_gap = 0.0;     // ‖C_y − C_y'‖_op
};

SpectrumReport assumption_diagnostics(const Matrix& c_y, const Matrix& c_theta, const Matrix& c_y_assumed,
                                      double sigma2);

/// How the noise correlation scales with the grid.
enum class LagConvention {
  UnitInterval,  // kernel evaluated at x_j = j/m
  IntegerLag,    // kernel evaluated at integer lags |i − j|
};

/// The working noise covariance in a ratio experiment.
enum class AssumedModel {
  IID,        // σ²I with the true marginal variance
  Banded,     // band_truncate(C_y, ⌈multiplier·log m⌉)
  Untruncated // band_truncate(C_y, m − 1), identical to C_y
};

struct RatioExperimentConfig {
  std::vector<std::size_t> ms{8, 16, 32, 64};
  KernelSpec truth{KernelFamily::MaternHalf, 0.05, 1.0, 0.5};
  LagConvention lags = LagConvention::UnitInterval;
  AssumedModel assumed = AssumedModel::IID;
  double bandwidth_multiplier = 3.0;
  KernelSpec mean_kernel{KernelFamily::GaussianSE, 1.0, 0.15, 0.5};
  std::size_t replicates = 200;
  std::size_t existing = 4;  // members of the single existing cluster
  double alpha = 1.0;
  std::uint64_t seed = 1;
};

struct RatioSummary {
  std::size_t m = 0;
  std::size_t bandwidth = 0;
  std::vector<double> log_ratios;  // one per replicate
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
  double median_abs = 0.0;
  double max_abs = 0.0;
};

/// Monte-Carlo distribution of the new-cluster log-ratio per m. Each
/// replicate draws θ_1 ~ N(0, C_θ) and y = θ_1 + ε, ε ~ N(0, C_y).
/// C_θ lives on the unit interval; C_y follows cfg.lags.
std::vector<RatioSummary> run_ratio_experiment(const RatioExperimentConfig& cfg);

/// Sample quantile with linear interpolation between order statistics.
double quantile(std::vector<double> values, double p);
double median(std::vector<double> values);

struct BandGapRow {
  std::size_t m = 0;
  std::size_t r = 0;
  double gap = 0.0;    // ‖C − band_r(C)‖_op before any shift
  double bound = 0.0;  // band_tail_bound(ν, r)
};

/// Unit-scale Matérn covariance at integer lags versus its band part.
BandGapRow band_gap(KernelFamily family, std::size_t m, std::size_t r);

/// One line of the theory report.
struct TheoryRow {
  std::string experiment;
  std::size_t m = 0;
  std::string statistic;
  double value = 0.0;
  std::uint64_t seed = 0;
};

struct TheoryConfig {
  std::vector<std::size_t> ratio_ms{8, 16, 32, 64};
  std::size_t replicates = 200;
  double sigma2 = 0.05;
  std::vector<std::size_t> growth_ms{16, 32, 64, 128, 256, 512, 1024};
  std::size_t gap_m = 128;
  std::vector<std::size_t> gap_bandwidths{5, 10, 15};
  std::uint64_t seed = 1;
};

/// Runs every lab experiment; rows in a fixed order.
std::vector<TheoryRow> run_theory_lab(const TheoryConfig& cfg);

}  // namespace fclust
