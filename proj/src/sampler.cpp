#include "fclust/sampler.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fclust/error.hpp"
#include "fclust/gauss.hpp"

namespace fclust {
namespace {

constexpr std::size_t kUnassigned = static_cast<std::size_t>(-1);
const double kLog2Pi = std::log(2.0 * std::numbers::pi);

double reflect(double x, double lo, double hi) {
  while (x < lo || x > hi) x = x < lo ? 2.0 * lo - x : 2.0 * hi - x;
  return x;
}

// Σ_j log φ(x_j | μ_j, τ²R) given Q = Σ_j ‖L_R⁻¹(x_j − μ_j)‖².
double gaussian_block_log_lik(std::size_t count, std::size_t m, double tau2, double logdet_unit, double quad) {
  const double c = static_cast<double>(count), md = static_cast<double>(m);
  return -0.5 * c * md * (kLog2Pi + std::log(tau2)) - 0.5 * c * logdet_unit - 0.5 * quad / tau2;
}

}  // namespace

// ---------------------------------------------------------------- small types

void PartitionPrior::validate() const {
  if (!(delta >= 0.0 && delta < 1.0)) throw ParameterError("discount must lie in [0, 1)");
  if (kind == PriorKind::DP) {
    if (delta != 0.0) throw ParameterError("a Dirichlet-process prior has zero discount");
    if (!(alpha > 0.0)) throw ParameterError("DP concentration must be positive");
  } else if (!(alpha > -delta)) {
    throw ParameterError("Pitman–Yor concentration must exceed -discount");
  }
}

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::IID: return "iid";
    case ErrorKind::DenseGP: return "dense_gp";
    case ErrorKind::BandedGP: return "banded_gp";
    case ErrorKind::Oracle: return "oracle";
  }
  return "unknown";
}

ErrorKind parse_error_kind(std::string_view name) {
  if (name == "iid") return ErrorKind::IID;
  if (name == "dense_gp" || name == "gp") return ErrorKind::DenseGP;
  if (name == "banded_gp" || name == "band") return ErrorKind::BandedGP;
  if (name == "oracle") return ErrorKind::Oracle;
  throw ParameterError("unknown error model '" + std::string(name) + "'");
}

std::string_view to_string(PriorKind kind) { return kind == PriorKind::DP ? "dp" : "py"; }

PriorKind parse_prior_kind(std::string_view name) {
  if (name == "dp" || name == "DP") return PriorKind::DP;
  if (name == "py" || name == "PY") return PriorKind::PY;
  throw ParameterError("unknown partition prior '" + std::string(name) + "'");
}

std::string_view to_string(NewClusterMean mode) { return mode == NewClusterMean::Prior ? "prior" : "posterior"; }

NewClusterMean parse_new_cluster_mean(std::string_view name) {
  if (name == "prior") return NewClusterMean::Prior;
  if (name == "posterior") return NewClusterMean::Posterior;
  throw ParameterError("unknown new-cluster mean mode '" + std::string(name) + "'");
}

std::string_view to_string(MeanBanding mode) {
  switch (mode) {
    case MeanBanding::Auto: return "auto";
    case MeanBanding::Banded: return "banded";
    case MeanBanding::Dense: return "dense";
  }
  return "unknown";
}

MeanBanding parse_mean_banding(std::string_view name) {
  if (name == "auto") return MeanBanding::Auto;
  if (name == "banded") return MeanBanding::Banded;
  if (name == "dense") return MeanBanding::Dense;
  throw ParameterError("unknown mean banding mode '" + std::string(name) + "'");
}

void HyperPrior::validate() const {
  if (nu_support.empty()) throw ParameterError("smoothness support is empty");
  for (KernelFamily f : nu_support)
    if (std::isnan(smoothness(f))) throw ParameterError("smoothness support must hold Matérn families");
  if (!(length_min > 0.0 && length_max > length_min)) throw ParameterError("length bounds must be positive and ordered");
  if (!(a_y > 0 && b_y > 0 && a_mu > 0 && b_mu > 0)) throw ParameterError("inverse-gamma parameters must be positive");
  if (!(rw_step > 0.0)) throw ParameterError("random-walk step must be positive");
}

void SamplerConfig::validate() const {
  prior.validate();
  hyper.validate();
  if (!(bandwidth_multiplier > 0.0)) throw ParameterError("bandwidth multiplier must be positive");
  if (!(iterations > burn_in)) throw ParameterError("iterations must exceed burn-in");
  if (std::isnan(smoothness(mean_family))) throw ParameterError("mean kernel must be a Matérn or Gaussian family");
  if (!(init_ell_mu >= hyper.length_min && init_ell_mu <= hyper.length_max))
    throw ParameterError("initial mean length-scale outside its bounds");
  if (!(init_ell_y >= hyper.length_min && init_ell_y <= hyper.length_max))
    throw ParameterError("initial error length-scale outside its bounds");
  if (fixed_tau_mu2 && !(*fixed_tau_mu2 > 0.0)) throw ParameterError("fixed tau_mu2 must be positive");
  if (error_kind == ErrorKind::Oracle) oracle_kernel.validate();
}

void ChainState::check_invariants() const {
  if (theta.size() != counts.size()) throw std::logic_error("theta rows differ from cluster count");
  std::vector<std::size_t> recount(counts.size(), 0);
  for (std::size_t label : z) {
    if (label >= counts.size()) throw std::logic_error("label references a missing cluster");
    ++recount[label];
  }
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (counts[k] == 0) throw std::logic_error("empty cluster kept alive");
    if (counts[k] != recount[k]) throw std::logic_error("cluster counts out of sync with labels");
  }
}

ModelStructure ModelStructure::from_config(const SamplerConfig& cfg, std::size_t m) {
  ModelStructure s;
  s.error_kind = cfg.error_kind;
  s.mean_family = cfg.mean_family;
  s.oracle_kernel = cfg.oracle_kernel;
  const std::size_t r = select_bandwidth(m, cfg.bandwidth_multiplier);
  switch (cfg.error_kind) {
    case ErrorKind::IID: s.error_bandwidth = 0; break;
    case ErrorKind::BandedGP: s.error_bandwidth = r; break;
    default: s.error_bandwidth = m - 1; break;
  }
  const bool banded_mean = cfg.mean_banding == MeanBanding::Banded ||
                           (cfg.mean_banding == MeanBanding::Auto && cfg.error_kind == ErrorKind::BandedGP);
  s.mean_bandwidth = banded_mean ? r : m - 1;
  s.dense_factorization = cfg.error_kind != ErrorKind::BandedGP;
  return s;
}

BandedSPD realize_error_correlation(const ModelStructure& model, const KernelSpec& unit, const Grid& grid) {
  const Matrix dense = build_covariance(unit, grid);
  if (model.error_kind == ErrorKind::BandedGP) return band_truncate(dense, model.error_bandwidth);
  return BandedSPD::from_dense(dense, model.error_bandwidth);
}

BandedSPD realize_mean_correlation(const ModelStructure& model, const KernelSpec& unit, const Grid& grid) {
  return band_truncate(build_covariance(unit, grid), model.mean_bandwidth);
}

CholeskyFactor factorize_for(const ModelStructure& model, BandedSPD& a) {
  if (model.dense_factorization && a.bandwidth() > 0) {
    try {
      return dense_cholesky(a.to_dense());
    } catch (const NotPositiveDefinite&) {
      // The banded path retries with the minimal shift.
    }
  }
  return a.factor();
}

double mh_accept_probability(double log_ratio) {
  if (std::isnan(log_ratio)) return 0.0;
  return log_ratio >= 0.0 ? 1.0 : std::exp(log_ratio);
}

std::vector<double> label_probabilities(std::span<const std::size_t> counts_minus_i,
                                        std::span<const double> log_lik_existing, double log_lik_new,
                                        const PartitionPrior& prior) {
  if (counts_minus_i.size() != log_lik_existing.size())
    throw DimensionError("label_probabilities: counts and likelihoods differ in length");
  const std::size_t k_minus = counts_minus_i.size();
  std::vector<double> logw(k_minus + 1);
  for (std::size_t k = 0; k < k_minus; ++k) {
    if (counts_minus_i[k] == 0) throw std::logic_error("empty cluster must be pruned before weighting");
    logw[k] = std::log(prior.existing_weight(counts_minus_i[k])) + log_lik_existing[k];
  }
  logw[k_minus] = std::log(prior.new_weight(k_minus)) + log_lik_new;
  const double norm = log_sum_exp(logw);
  for (double& w : logw) w = std::exp(w - norm);
  return logw;
}

// ---------------------------------------------------------------- ClusterMeanPosterior

ClusterMeanPosterior::ClusterMeanPosterior(ScaledCovariance theta_prior, ScaledCovariance noise, std::size_t n_k,
                                           const Vector& y_sum, bool dense_factorization)
    : theta_(theta_prior), noise_(noise), n_k_(n_k) {
  if (n_k_ > 0) {
    BandedSPD s = BandedSPD::combine(theta_.scale, theta_.unit, noise_.scale / static_cast<double>(n_k_), noise_.unit);
    if (dense_factorization && s.bandwidth() > 0) {
      try {
        s_factor_.emplace(dense_cholesky(s.to_dense()));
      } catch (const NotPositiveDefinite&) {
        s_factor_.emplace(s.factor());
      }
    } else {
      s_factor_.emplace(s.factor());
    }
  }
  finish(y_sum);
}

ClusterMeanPosterior::ClusterMeanPosterior(ScaledCovariance theta_prior, ScaledCovariance noise, std::size_t n_k,
                                           const Vector& y_sum, CholeskyFactor s_factor)
    : theta_(theta_prior), noise_(noise), n_k_(n_k), s_factor_(std::move(s_factor)) {
  finish(y_sum);
}

void ClusterMeanPosterior::finish(const Vector& y_sum) {
  if (static_cast<std::size_t>(y_sum.size()) != theta_.unit.dim()) throw DimensionError("cluster sum has wrong length");
  if (n_k_ == 0) {
    y_bar_ = Vector::Zero(y_sum.size());
    mean_ = y_bar_;
    return;
  }
  y_bar_ = y_sum / static_cast<double>(n_k_);
  mean_ = apply_prior(s_factor_->solve(y_bar_));
}

Vector ClusterMeanPosterior::apply_prior(const Vector& v) const { return theta_.scale * theta_.unit.multiply(v); }

Vector ClusterMeanPosterior::apply_covariance(const Vector& v) const {
  const Vector cv = apply_prior(v);
  if (n_k_ == 0) return cv;
  return cv - apply_prior(s_factor_->solve(cv));
}

Vector ClusterMeanPosterior::sample(RngStream& rng) const {
  const auto m = static_cast<Eigen::Index>(theta_.unit.dim());
  const Vector theta0 = std::sqrt(theta_.scale) * theta_.unit_factor.lower_multiply(standard_normal(m, rng));
  if (n_k_ == 0) return theta0;
  const Vector e = std::sqrt(noise_.scale / static_cast<double>(n_k_)) *
                   noise_.unit_factor.lower_multiply(standard_normal(m, rng));
  return theta0 + apply_prior(s_factor_->solve(Vector(y_bar_ - theta0 - e)));
}

// ---------------------------------------------------------------- GibbsSampler

GibbsSampler::GibbsSampler(const Matrix& y, Grid grid, SamplerConfig config, RngStream rng)
    : grid_(std::move(grid)), config_(std::move(config)), rng_(std::move(rng)) {
  config_.validate();
  n_ = static_cast<std::size_t>(y.rows());
  m_ = static_cast<std::size_t>(y.cols());
  if (n_ == 0) throw ParameterError("the sampler needs at least one curve");
  if (m_ != grid_.size()) throw DimensionError("data width differs from the grid size");
  y_.reserve(n_);
  for (Eigen::Index i = 0; i < y.rows(); ++i) y_.emplace_back(y.row(i).transpose());
  structure_ = ModelStructure::from_config(config_, m_);

  switch (config_.error_kind) {
    case ErrorKind::IID: state_.error_kernel = {KernelFamily::IID, 1.0, 1.0, 0.5}; break;
    case ErrorKind::Oracle:
      state_.error_kernel = config_.oracle_kernel;
      state_.error_kernel.scale = 1.0;
      break;
    default: state_.error_kernel = {config_.init_error_family, 1.0, config_.init_ell_y, 0.5}; break;
  }
  state_.mean_kernel = {config_.mean_family, 1.0, config_.init_ell_mu, 0.5};

  const HyperPrior& h = config_.hyper;
  state_.tau_y2 = config_.error_kind == ErrorKind::Oracle ? config_.oracle_kernel.scale
                                                          : rng_.inverse_gamma(h.a_y, h.b_y);
  state_.tau_mu2 = config_.fixed_tau_mu2 ? *config_.fixed_tau_mu2 : rng_.inverse_gamma(h.a_mu, h.b_mu);

  r_y_.emplace(realize_error(state_.error_kernel));
  r_y_factor_.emplace(factorize(*r_y_));
  r_mu_.emplace(realize_mean(state_.mean_kernel));
  r_mu_factor_.emplace(factorize(*r_mu_));

  state_.z.assign(n_, 0);
  state_.counts = {n_};
  state_.theta = {std::sqrt(state_.tau_mu2) *
                  r_mu_factor_->lower_multiply(standard_normal(static_cast<Eigen::Index>(m_), rng_))};
  refresh_error_cache();
  refresh_new_cluster_cache();
}

BandedSPD GibbsSampler::realize_error(const KernelSpec& unit) const {
  return realize_error_correlation(structure_, unit, grid_);
}

BandedSPD GibbsSampler::realize_mean(const KernelSpec& unit) const {
  return realize_mean_correlation(structure_, unit, grid_);
}

CholeskyFactor GibbsSampler::factorize(BandedSPD& a) const { return factorize_for(structure_, a); }

std::optional<CholeskyFactor> GibbsSampler::try_factorize(BandedSPD& a) const {
  try {
    return factorize(a);
  } catch (const NumericalError&) {
    return std::nullopt;
  }
}

void GibbsSampler::refresh_error_cache() {
  y_whitened_.resize(n_);
  for (std::size_t i = 0; i < n_; ++i) y_whitened_[i] = r_y_factor_->forward_solve(y_[i]);
  refresh_theta_whitened();
}

void GibbsSampler::refresh_theta_whitened() {
  theta_whitened_.resize(state_.theta.size());
  for (std::size_t k = 0; k < state_.theta.size(); ++k) theta_whitened_[k] = r_y_factor_->forward_solve(state_.theta[k]);
}

void GibbsSampler::ensure_new_cluster_cache() {
  if (new_cluster_stale_) refresh_new_cluster_cache();
}

void GibbsSampler::refresh_new_cluster_cache() {
  new_cluster_stale_ = false;
  c_new_.emplace(BandedSPD::combine(state_.tau_y2, *r_y_, state_.tau_mu2, *r_mu_));
  c_new_factor_.emplace(factorize(*c_new_));
  log_lik_new_.resize(n_);
  for (std::size_t i = 0; i < n_; ++i) log_lik_new_[i] = log_pdf_centered(y_[i], *c_new_factor_);
}

double GibbsSampler::log_lik_existing(std::size_t i, std::size_t k) const {
  const double quad = (y_whitened_[i] - theta_whitened_[k]).squaredNorm();
  return gaussian_block_log_lik(1, m_, state_.tau_y2, r_y_factor_->logdet(), quad);
}

void GibbsSampler::remove_item(std::size_t i) {
  const std::size_t k = state_.z[i];
  if (k == kUnassigned) return;
  state_.z[i] = kUnassigned;
  if (--state_.counts[k] > 0) return;
  state_.counts.erase(state_.counts.begin() + static_cast<std::ptrdiff_t>(k));
  state_.theta.erase(state_.theta.begin() + static_cast<std::ptrdiff_t>(k));
  theta_whitened_.erase(theta_whitened_.begin() + static_cast<std::ptrdiff_t>(k));
  for (std::size_t& label : state_.z)
    if (label != kUnassigned && label > k) --label;
}

void GibbsSampler::add_item(std::size_t i, std::size_t k) {
  state_.z[i] = k;
  ++state_.counts[k];
}

std::size_t GibbsSampler::open_cluster(std::size_t i) {
  ensure_new_cluster_cache();
  Vector theta;
  if (config_.new_cluster_mean == NewClusterMean::Prior) {
    theta = std::sqrt(state_.tau_mu2) *
            r_mu_factor_->lower_multiply(standard_normal(static_cast<Eigen::Index>(m_), rng_));
  } else {
    // With one member, S = C_θ + C_y is the new-cluster marginal covariance.
    const ClusterMeanPosterior post({*r_mu_, *r_mu_factor_, state_.tau_mu2}, {*r_y_, *r_y_factor_, state_.tau_y2}, 1,
                                    y_[i], *c_new_factor_);
    theta = post.sample(rng_);
  }
  theta_whitened_.push_back(r_y_factor_->forward_solve(theta));
  state_.theta.push_back(std::move(theta));
  state_.counts.push_back(1);
  state_.z[i] = state_.counts.size() - 1;
  return state_.z[i];
}

std::vector<double> GibbsSampler::label_weights(std::size_t i) {
  if (i >= n_) throw ParameterError("item index out of range");
  ensure_new_cluster_cache();
  remove_item(i);
  std::vector<double> ll(state_.K());
  for (std::size_t k = 0; k < ll.size(); ++k) ll[k] = log_lik_existing(i, k);
  return label_probabilities(state_.counts, ll, log_lik_new_[i], config_.prior);
}

void GibbsSampler::sweep_labels() {
  for (std::size_t i = 0; i < n_; ++i) {
    const std::vector<double> probs = label_weights(i);
    const std::size_t k = rng_.categorical(probs);
    if (k == state_.K())
      open_cluster(i);
    else
      add_item(i, k);
  }
}

void GibbsSampler::update_cluster_means() {
  const std::size_t K = state_.K();
  std::vector<Vector> sums(K, Vector::Zero(static_cast<Eigen::Index>(m_)));
  for (std::size_t i = 0; i < n_; ++i) sums[state_.z[i]] += y_[i];
  for (std::size_t k = 0; k < K; ++k) {
    const ClusterMeanPosterior post({*r_mu_, *r_mu_factor_, state_.tau_mu2}, {*r_y_, *r_y_factor_, state_.tau_y2},
                                    state_.counts[k], sums[k], structure_.dense_factorization);
    state_.theta[k] = post.sample(rng_);
  }
  refresh_theta_whitened();
}

double GibbsSampler::error_residual_quad(const CholeskyFactor& r_factor) const {
  double q = 0.0;
  for (std::size_t i = 0; i < n_; ++i) q += r_factor.quad_form(y_[i] - state_.theta[state_.z[i]]);
  return q;
}

double GibbsSampler::mean_quad(const CholeskyFactor& r_factor) const {
  double q = 0.0;
  for (const Vector& t : state_.theta) q += r_factor.quad_form(t);
  return q;
}

void GibbsSampler::update_scales() {
  const HyperPrior& h = config_.hyper;
  const double md = static_cast<double>(m_);
  if (config_.error_kind != ErrorKind::Oracle) {
    double q_y = 0.0;
    for (std::size_t i = 0; i < n_; ++i) q_y += (y_whitened_[i] - theta_whitened_[state_.z[i]]).squaredNorm();
    state_.tau_y2 = rng_.inverse_gamma(h.a_y + 0.5 * static_cast<double>(n_) * md, h.b_y + 0.5 * q_y);
  }
  if (!config_.fixed_tau_mu2) {
    const double q_mu = mean_quad(*r_mu_factor_);
    state_.tau_mu2 = rng_.inverse_gamma(h.a_mu + 0.5 * static_cast<double>(state_.K()) * md, h.b_mu + 0.5 * q_mu);
  }
  new_cluster_stale_ = true;
}

double GibbsSampler::propose_log_length(double current) {
  const HyperPrior& h = config_.hyper;
  return reflect(std::log(current) + h.rw_step * rng_.normal(), std::log(h.length_min), std::log(h.length_max));
}

void GibbsSampler::mh_error_kernel() {
  const HyperPrior& h = config_.hyper;
  KernelSpec proposal = state_.error_kernel;
  proposal.family = h.nu_support[rng_.uniform_index(h.nu_support.size())];
  proposal.length = std::exp(propose_log_length(state_.error_kernel.length));
  const double log_u = std::log(rng_.uniform());

  double current_quad = 0.0;
  for (std::size_t i = 0; i < n_; ++i) current_quad += (y_whitened_[i] - theta_whitened_[state_.z[i]]).squaredNorm();
  const double current = gaussian_block_log_lik(n_, m_, state_.tau_y2, r_y_factor_->logdet(), current_quad);

  BandedSPD r_new = realize_error(proposal);
  std::optional<CholeskyFactor> f_new = try_factorize(r_new);
  if (!f_new) return;
  const double proposed = gaussian_block_log_lik(n_, m_, state_.tau_y2, f_new->logdet(), error_residual_quad(*f_new));
  // Flat priors on ν and log ℓ within bounds and a symmetric proposal: only the likelihood moves.
  if (log_u < proposed - current) {
    state_.error_kernel = proposal;
    r_y_.emplace(std::move(r_new));
    r_y_factor_.emplace(std::move(*f_new));
    refresh_error_cache();
    ++error_accepts_;
  }
}

void GibbsSampler::mh_mean_kernel() {
  KernelSpec proposal = state_.mean_kernel;
  proposal.length = std::exp(propose_log_length(state_.mean_kernel.length));
  const double log_u = std::log(rng_.uniform());
  const std::size_t K = state_.K();
  const double current = gaussian_block_log_lik(K, m_, state_.tau_mu2, r_mu_factor_->logdet(), mean_quad(*r_mu_factor_));
  BandedSPD r_new = realize_mean(proposal);
  std::optional<CholeskyFactor> f_new = try_factorize(r_new);
  if (!f_new) return;
  const double proposed = gaussian_block_log_lik(K, m_, state_.tau_mu2, f_new->logdet(), mean_quad(*f_new));
  if (log_u < proposed - current) {
    state_.mean_kernel = proposal;
    r_mu_.emplace(std::move(r_new));
    r_mu_factor_.emplace(std::move(*f_new));
    ++mean_accepts_;
  }
}

void GibbsSampler::update_kernel_hyperparams() {
  const bool gp = config_.error_kind == ErrorKind::DenseGP || config_.error_kind == ErrorKind::BandedGP;
  if (gp) mh_error_kernel();
  if (config_.update_mean_kernel) mh_mean_kernel();
  new_cluster_stale_ = true;
}

void GibbsSampler::step() {
  sweep_labels();
  update_cluster_means();
  update_scales();
  update_kernel_hyperparams();
}

double GibbsSampler::data_log_likelihood() const {
  return gaussian_block_log_lik(n_, m_, state_.tau_y2, r_y_factor_->logdet(), error_residual_quad(*r_y_factor_));
}

ChainTrace run_chain(const Matrix& y, const Grid& grid, const SamplerConfig& config, RngStream& rng) {
  GibbsSampler sampler(y, grid, config, rng);
  ChainTrace trace;
  trace.model = sampler.structure();
  trace.iterations = config.iterations;
  trace.burn_in = config.burn_in;
  trace.draws.reserve(config.iterations - config.burn_in);
  trace.sweep_seconds.reserve(config.iterations);
  const bool has_length = config.error_kind == ErrorKind::DenseGP || config.error_kind == ErrorKind::BandedGP ||
                          (config.error_kind == ErrorKind::Oracle && config.oracle_kernel.uses_length());
  for (std::size_t t = 1; t <= config.iterations; ++t) {
    const auto start = std::chrono::steady_clock::now();
    try {
      sampler.step();
    } catch (const std::exception& e) {
      throw ChainAborted("chain aborted at iteration " + std::to_string(t) + ": " + e.what(), t);
    }
    trace.sweep_seconds.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    if (t <= config.burn_in) continue;
    const ChainState& s = sampler.state();
    TraceDraw d;
    d.iteration = t;
    d.partition = make_partition(s.z);
    d.tau_y2 = s.tau_y2;
    d.tau_mu2 = s.tau_mu2;
    d.nu = smoothness(s.error_kernel.family);
    d.ell_y = has_length ? s.error_kernel.length : std::numeric_limits<double>::quiet_NaN();
    d.ell_mu = s.mean_kernel.length;
    trace.draws.push_back(std::move(d));
  }
  const double iters = static_cast<double>(config.iterations);
  trace.mh_error_acceptance = static_cast<double>(sampler.mh_error_accepts()) / iters;
  trace.mh_mean_acceptance = static_cast<double>(sampler.mh_mean_accepts()) / iters;
  rng = sampler.rng();
  return trace;
}

}  // namespace fclust
