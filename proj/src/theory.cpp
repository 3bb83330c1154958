#include "fclust/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fclust/error.hpp"
#include "fclust/gauss.hpp"
#include "fclust/rng.hpp"

namespace fclust {
namespace {

void require_square(const Matrix& a, Eigen::Index m, const char* what) {
  if (a.rows() != m || a.cols() != m) throw DimensionError(std::string(what) + " has the wrong shape");
}

double logdet_dense(const Matrix& a) { return dense_cholesky(a).logdet(); }

}  // namespace

double new_cluster_log_prob(const Vector& y, const std::vector<Vector>& thetas, const std::vector<std::size_t>& counts,
                            double alpha, const CholeskyFactor& c_factor, const CholeskyFactor& marginal_factor) {
  if (thetas.size() != counts.size()) throw DimensionError("one count per existing cluster");
  if (!(alpha > 0.0)) throw ParameterError("concentration must be positive");
  const double log_new = std::log(alpha) + log_pdf_centered(y, marginal_factor);
  std::vector<double> terms{log_new};
  for (std::size_t k = 0; k < thetas.size(); ++k)
    terms.push_back(std::log(static_cast<double>(counts[k])) + log_pdf(y, thetas[k], c_factor));
  return log_new - log_sum_exp(terms);
}

double new_cluster_log_ratio(const Vector& y, const std::vector<Vector>& thetas, const std::vector<std::size_t>& counts,
                             double alpha, const Matrix& c_y, const Matrix& c_y_assumed, const Matrix& c_theta) {
  const Eigen::Index m = y.size();
  require_square(c_y, m, "C_y");
  require_square(c_y_assumed, m, "assumed C_y");
  require_square(c_theta, m, "C_theta");
  if (thetas.empty()) return 0.0;
  const double assumed = new_cluster_log_prob(y, thetas, counts, alpha, dense_cholesky(c_y_assumed),
                                              dense_cholesky(Matrix(c_y_assumed + c_theta)));
  const double truth =
      new_cluster_log_prob(y, thetas, counts, alpha, dense_cholesky(c_y), dense_cholesky(Matrix(c_y + c_theta)));
  return assumed - truth;
}

std::vector<double> logdet_growth(double nu, double kappa, const std::vector<std::size_t>& ms) {
  if (!(nu > 0.0 && kappa > 0.0)) throw ParameterError("nu and kappa must be positive");
  const double power = 2.0 * nu + 1.0 - kappa;
  std::vector<double> out;
  out.reserve(ms.size());
  for (std::size_t m : ms) {
    double l = 0.0;
    for (std::size_t j = 1; j <= m; ++j) l += std::log1p(std::pow(static_cast<double>(j), power));
    out.push_back(l);
  }
  return out;
}

double fit_growth_exponent(const std::vector<std::size_t>& ms, const std::vector<double>& values, bool log_factor) {
  if (ms.size() != values.size() || ms.size() < 2) throw DimensionError("need matching m and L with two or more points");
  std::vector<double> x, y;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    const double lm = std::log(static_cast<double>(ms[i]));
    if (!(values[i] > 0.0) || (log_factor && !(lm > 0.0))) throw DomainError("growth fit needs positive values");
    x.push_back(lm);
    y.push_back(std::log(log_factor ? values[i] / lm : values[i]));
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i] / n;
    my += y[i] / n;
  }
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

SpectrumReport assumption_diagnostics(const Matrix& c_y, const Matrix& c_theta, const Matrix& c_y_assumed,
                                      double sigma2) {
  const Eigen::Index m = c_y.rows();
  require_square(c_y, m, "C_y");
  require_square(c_theta, m, "C_theta");
  require_square(c_y_assumed, m, "assumed C_y");
  SpectrumReport r;
  r.eigen_c_y = eigenvalues_descending(c_y);
  r.eigen_c_theta = eigenvalues_descending(c_theta);
  r.lambda_min_c_y = r.eigen_c_y(r.eigen_c_y.size() - 1);
  r.lambda_min_c_theta = r.eigen_c_theta(r.eigen_c_theta.size() - 1);
  r.logdet_ratio = logdet_dense(Matrix(c_y + c_theta)) - logdet_dense(c_y);
  const Matrix shifted = c_theta + sigma2 * Matrix::Identity(m, m);
  r.trace_quantity = dense_cholesky(shifted).solve(Matrix(c_theta + c_y)).trace() - c_y.trace();
  r.operator_gap = symmetric_operator_norm(Matrix(c_y - c_y_assumed));
  return r;
}

double quantile(std::vector<double> values, double p) {
  if (values.empty()) throw ParameterError("quantile of an empty sample");
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("quantile level outside [0, 1]");
  std::sort(values.begin(), values.end());
  const double h = p * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

double median(std::vector<double> values) { return quantile(std::move(values), 0.5); }

std::vector<RatioSummary> run_ratio_experiment(const RatioExperimentConfig& cfg) {
  if (cfg.replicates == 0) throw ParameterError("replicates must be positive");
  for (std::size_t i = 1; i < cfg.ms.size(); ++i)
    if (cfg.ms[i] <= cfg.ms[i - 1]) throw ParameterError("m values must increase");
  std::vector<RatioSummary> out;
  for (std::size_t m : cfg.ms) {
    const Grid unit = Grid::equispaced(m);
    const Grid noise_grid = cfg.lags == LagConvention::IntegerLag ? Grid::index(m) : unit;
    const Matrix c_y = build_covariance(cfg.truth, noise_grid);
    const Matrix c_theta = build_covariance(cfg.mean_kernel, unit);
    RatioSummary s;
    s.m = m;
    Matrix c_assumed;
    switch (cfg.assumed) {
      case AssumedModel::IID:
        c_assumed = build_covariance({KernelFamily::IID, cfg.truth.scale, 1.0, 0.5}, unit);
        s.bandwidth = 0;
        break;
      case AssumedModel::Banded:
        s.bandwidth = select_bandwidth(m, cfg.bandwidth_multiplier);
        c_assumed = band_truncate(c_y, s.bandwidth).to_dense();
        break;
      case AssumedModel::Untruncated:
        s.bandwidth = m - 1;
        c_assumed = band_truncate(c_y, s.bandwidth).to_dense();
        break;
    }
    const CholeskyFactor f_true = dense_cholesky(c_y);
    const CholeskyFactor f_true_marginal = dense_cholesky(Matrix(c_y + c_theta));
    const CholeskyFactor f_assumed = dense_cholesky(c_assumed);
    const CholeskyFactor f_assumed_marginal = dense_cholesky(Matrix(c_assumed + c_theta));
    const CholeskyFactor f_theta = dense_cholesky(c_theta);
    const Vector zero = Vector::Zero(static_cast<Eigen::Index>(m));
    const std::vector<std::size_t> counts{cfg.existing};
    for (std::size_t rep = 0; rep < cfg.replicates; ++rep) {
      RngStream rng(mix_seed({cfg.seed, m, rep}));
      const std::vector<Vector> thetas{sample(zero, f_theta, rng)};
      const Vector y = sample(thetas[0], f_true, rng);
      const double assumed = new_cluster_log_prob(y, thetas, counts, cfg.alpha, f_assumed, f_assumed_marginal);
      const double truth = new_cluster_log_prob(y, thetas, counts, cfg.alpha, f_true, f_true_marginal);
      s.log_ratios.push_back(assumed - truth);
    }
    std::vector<double> abs_ratios;
    for (double v : s.log_ratios) abs_ratios.push_back(std::abs(v));
    s.median = median(s.log_ratios);
    s.q1 = quantile(s.log_ratios, 0.25);
    s.q3 = quantile(s.log_ratios, 0.75);
    s.median_abs = median(abs_ratios);
    s.max_abs = *std::max_element(abs_ratios.begin(), abs_ratios.end());
    out.push_back(std::move(s));
  }
  return out;
}

BandGapRow band_gap(KernelFamily family, std::size_t m, std::size_t r) {
  const double nu = smoothness(family);
  if (std::isnan(nu) || std::isinf(nu)) throw ParameterError("band gap needs a finite Matérn smoothness");
  const Matrix c = build_covariance({family, 1.0, 1.0, 0.5}, Grid::index(m));
  BandGapRow row;
  row.m = m;
  row.r = r;
  row.gap = symmetric_operator_norm(Matrix(c - band_part(c, r)));
  row.bound = band_tail_bound(nu, static_cast<double>(r));
  return row;
}

std::vector<TheoryRow> run_theory_lab(const TheoryConfig& cfg) {
  std::vector<TheoryRow> rows;
  auto emit_ratio = [&](const std::string& name, const std::vector<RatioSummary>& summaries, std::uint64_t seed) {
    for (const RatioSummary& s : summaries) {
      rows.push_back({name, s.m, "median_log_ratio", s.median, seed});
      rows.push_back({name, s.m, "q1_log_ratio", s.q1, seed});
      rows.push_back({name, s.m, "q3_log_ratio", s.q3, seed});
      rows.push_back({name, s.m, "median_abs_log_ratio", s.median_abs, seed});
      rows.push_back({name, s.m, "max_abs_log_ratio", s.max_abs, seed});
      rows.push_back({name, s.m, "bandwidth", static_cast<double>(s.bandwidth), seed});
    }
  };

  RatioExperimentConfig iid;
  iid.ms = cfg.ratio_ms;
  iid.replicates = cfg.replicates;
  iid.truth = {KernelFamily::MaternHalf, cfg.sigma2, 1.0, 0.5};
  iid.assumed = AssumedModel::IID;
  iid.seed = mix_seed({cfg.seed, 1});
  emit_ratio("iid_vs_exp", run_ratio_experiment(iid), iid.seed);

  RatioExperimentConfig banded = iid;
  banded.lags = LagConvention::IntegerLag;
  banded.assumed = AssumedModel::Banded;
  banded.seed = mix_seed({cfg.seed, 2});
  emit_ratio("banded_vs_exp", run_ratio_experiment(banded), banded.seed);

  RatioExperimentConfig control = banded;
  control.assumed = AssumedModel::Untruncated;
  control.seed = mix_seed({cfg.seed, 3});
  emit_ratio("untruncated_control", run_ratio_experiment(control), control.seed);

  struct Growth {
    const char* name;
    double kappa;
    bool log_factor;
  };
  for (const Growth& g : {Growth{"logdet_nu1_kappa1", 1.0, true}, Growth{"logdet_nu1_kappa3", 3.0, false},
                          Growth{"logdet_nu1_kappa3.5", 3.5, false}}) {
    const std::vector<double> l = logdet_growth(1.0, g.kappa, cfg.growth_ms);
    for (std::size_t i = 0; i < l.size(); ++i) {
      rows.push_back({g.name, cfg.growth_ms[i], "L", l[i], 0});
      rows.push_back({g.name, cfg.growth_ms[i], "L_over_m", l[i] / static_cast<double>(cfg.growth_ms[i]), 0});
    }
    rows.push_back({g.name, 0, g.log_factor ? "exponent_with_log_factor" : "exponent",
                    fit_growth_exponent(cfg.growth_ms, l, g.log_factor), 0});
  }

  for (std::size_t r : cfg.gap_bandwidths) {
    const BandGapRow b = band_gap(KernelFamily::MaternHalf, cfg.gap_m, r);
    const std::string name = "band_gap_r" + std::to_string(r);
    rows.push_back({name, b.m, "operator_gap", b.gap, 0});
    rows.push_back({name, b.m, "tail_bound", b.bound, 0});
  }
  return rows;
}

}  // namespace fclust
