#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fclust/blinalg.hpp"
#include "fclust/kernels.hpp"
#include "fclust/partition.hpp"
#include "fclust/rng.hpp"

namespace fclust {

enum class PriorKind { DP, PY };

/// Dirichlet-process (δ = 0) or Pitman–Yor partition prior.
struct PartitionPrior {
  PriorKind kind = PriorKind::DP;
  double alpha = 1.0;
  double delta = 0.0;

  static PartitionPrior dp(double alpha) { return {PriorKind::DP, alpha, 0.0}; }
  static PartitionPrior py(double alpha, double delta) { return {PriorKind::PY, alpha, delta}; }

  void validate() const;
  /// Unnormalized seating weight of an existing cluster with n_minus members.
  double existing_weight(std::size_t n_minus) const { return static_cast<double>(n_minus) - delta; }
  /// Unnormalized weight of opening a cluster when k_minus clusters exist.
  double new_weight(std::size_t k_minus) const { return alpha + delta * static_cast<double>(k_minus); }
};

/// Working error covariance of the fitted model.
enum class ErrorKind {
  IID,       // τ²·I
  DenseGP,   // τ²·R(ν, ℓ), dense Matérn correlation
  BandedGP,  // τ²·band_r(R(ν, ℓ))
  Oracle,    // the data-generating covariance, held fixed
};

std::string_view to_string(ErrorKind kind);
ErrorKind parse_error_kind(std::string_view name);
std::string_view to_string(PriorKind kind);
PriorKind parse_prior_kind(std::string_view name);

struct HyperPrior {
  std::vector<KernelFamily> nu_support{KernelFamily::MaternHalf, KernelFamily::MaternThreeHalves,
                                       KernelFamily::MaternFiveHalves, KernelFamily::GaussianSE};
  double length_min = 0.01;
  double length_max = 10.0;
  double a_y = 1.0, b_y = 1.0;
  double a_mu = 1.0, b_mu = 1.0;
  double rw_step = 0.3;  // random-walk step on log ℓ

  void validate() const;
};

/// How a freshly opened cluster gets its mean.
enum class NewClusterMean {
  Prior,      // θ ~ N(0, C_θ)
  Posterior,  // θ ~ N(m₁, V₁), the one-observation conditional given y_i
};

enum class MeanBanding { Auto, Banded, Dense };

std::string_view to_string(NewClusterMean mode);
NewClusterMean parse_new_cluster_mean(std::string_view name);
std::string_view to_string(MeanBanding mode);
MeanBanding parse_mean_banding(std::string_view name);

struct SamplerConfig {
  PartitionPrior prior;
  ErrorKind error_kind = ErrorKind::DenseGP;
  double bandwidth_multiplier = 3.0;
  /// Auto: C_θ is banded with the error bandwidth for BandedGP, dense otherwise.
  /// Banding the cluster-mean kernel needs a large diagonal shift once the
  /// kernel outgrows the band, so C_θ stays dense unless asked for.
  MeanBanding mean_banding = MeanBanding::Dense;
  std::size_t iterations = 5000;
  std::size_t burn_in = 2000;
  HyperPrior hyper;

  KernelFamily mean_family = KernelFamily::GaussianSE;
  double init_ell_mu = 0.15;
  KernelFamily init_error_family = KernelFamily::MaternHalf;
  double init_ell_y = 0.1;
  bool update_mean_kernel = true;
  /// Holds τ_μ² at this value instead of drawing it.
  std::optional<double> fixed_tau_mu2;
  /// Oracle error model only: the full noise covariance (scale included).
  KernelSpec oracle_kernel{KernelFamily::IID, 0.05, 1.0, 0.5};
  NewClusterMean new_cluster_mean = NewClusterMean::Prior;
  std::uint64_t seed = 1;

  void validate() const;
};

/// Current state of one chain. Labels are 0..K-1 with no gaps.
struct ChainState {
  Labels z;
  std::vector<std::size_t> counts;
  std::vector<Vector> theta;
  double tau_y2 = 1.0;
  double tau_mu2 = 1.0;
  KernelSpec error_kernel;  // unit scale
  KernelSpec mean_kernel;   // unit scale

  std::size_t K() const noexcept { return counts.size(); }
  /// Throws std::logic_error if counts, labels or θ rows disagree.
  void check_invariants() const;
};

/// Structure of the fitted model, fixed for the life of a chain.
struct ModelStructure {
  ErrorKind error_kind = ErrorKind::DenseGP;
  std::size_t error_bandwidth = 0;
  std::size_t mean_bandwidth = 0;
  bool dense_factorization = true;
  KernelFamily mean_family = KernelFamily::GaussianSE;
  KernelSpec oracle_kernel;

  static ModelStructure from_config(const SamplerConfig& cfg, std::size_t m);
};

/// Unit-scale error correlation as the model sees it (banded, dense or identity).
BandedSPD realize_error_correlation(const ModelStructure& model, const KernelSpec& unit, const Grid& grid);
/// Unit-scale cluster-mean correlation as the model sees it.
BandedSPD realize_mean_correlation(const ModelStructure& model, const KernelSpec& unit, const Grid& grid);
/// Cholesky factor through the model's backend. A dense failure falls back to
/// the banded factorization with its minimal diagonal shift.
CholeskyFactor factorize_for(const ModelStructure& model, BandedSPD& a);

struct TraceDraw {
  std::size_t iteration = 0;
  PartitionSample partition;
  double tau_y2 = 0.0;
  double tau_mu2 = 0.0;
  double nu = 0.0;     // NaN when the error model has no smoothness
  double ell_y = 0.0;  // NaN when the error model has no length-scale
  double ell_mu = 0.0;

  friend bool operator==(const TraceDraw&, const TraceDraw&) = default;
};

struct ChainTrace {
  ModelStructure model;
  std::size_t iterations = 0;
  std::size_t burn_in = 0;
  std::vector<TraceDraw> draws;
  std::vector<double> sweep_seconds;
  double mh_error_acceptance = 0.0;
  double mh_mean_acceptance = 0.0;
};

/// Normalized CRP / Pitman–Yor full conditional for one label, from the
/// leave-one-out cluster sizes and the log-likelihoods of the item under each
/// existing cluster and under a new one. Returns K+1 probabilities, the last
/// for the new cluster. Computed in log space.
std::vector<double> label_probabilities(std::span<const std::size_t> counts_minus_i,
                                        std::span<const double> log_lik_existing, double log_lik_new,
                                        const PartitionPrior& prior);

/// A covariance given as scale × unit matrix, with the unit matrix factor.
struct ScaledCovariance {
  const BandedSPD& unit;
  const CholeskyFactor& unit_factor;
  double scale;
};

/// Conditional posterior of a cluster mean θ given n_k member curves:
/// V = (C_θ⁻¹ + n_k C_y⁻¹)⁻¹ and m = V C_y⁻¹ Σ y_i.
///
/// Held in covariance form, V = C_θ − C_θ S⁻¹ C_θ with S = C_θ + C_y/n_k, so
/// only S is factored and neither C_θ nor C_y is inverted; draws use
/// θ = θ₀ + C_θ S⁻¹(ȳ − θ₀ − e), θ₀ ~ N(0, C_θ), e ~ N(0, C_y/n_k).
class ClusterMeanPosterior {
 public:
  ClusterMeanPosterior(ScaledCovariance theta_prior, ScaledCovariance noise, std::size_t n_k, const Vector& y_sum,
                       bool dense_factorization);
  /// Same, with the factor of S supplied by the caller.
  ClusterMeanPosterior(ScaledCovariance theta_prior, ScaledCovariance noise, std::size_t n_k, const Vector& y_sum,
                       CholeskyFactor s_factor);

  const Vector& mean() const noexcept { return mean_; }
  /// V v.
  Vector apply_covariance(const Vector& v) const;
  Vector sample(RngStream& rng) const;

 private:
  void finish(const Vector& y_sum);
  Vector apply_prior(const Vector& v) const;

  ScaledCovariance theta_;
  ScaledCovariance noise_;
  std::size_t n_k_;
  std::optional<CholeskyFactor> s_factor_;
  Vector y_bar_;
  Vector mean_;
};

/// Gibbs sampler for the functional mixture: CRP / PY label updates, conjugate
/// cluster means, inverse-gamma scales, and Metropolis–Hastings kernel
/// hyperparameters, in that order within each iteration.
class GibbsSampler {
 public:
  /// y is n×m, one curve per row.
  GibbsSampler(const Matrix& y, Grid grid, SamplerConfig config, RngStream rng);

  const ChainState& state() const noexcept { return state_; }
  const ModelStructure& structure() const noexcept { return structure_; }
  const SamplerConfig& config() const noexcept { return config_; }

  /// Full conditional of z_i given the rest. Removes i from its cluster
  /// (pruning it when emptied) before computing the weights.
  std::vector<double> label_weights(std::size_t i);

  void sweep_labels();
  void update_cluster_means();
  void update_scales();
  void update_kernel_hyperparams();
  /// One full iteration: labels, means, scales, kernel hyperparameters.
  void step();

  /// Σ_i log φ(y_i | θ_{z_i}, τ_y² R_y) for the current state.
  double data_log_likelihood() const;

  RngStream& rng() noexcept { return rng_; }
  std::size_t mh_error_accepts() const noexcept { return error_accepts_; }
  std::size_t mh_mean_accepts() const noexcept { return mean_accepts_; }

 private:
  void remove_item(std::size_t i);
  void add_item(std::size_t i, std::size_t k);
  std::size_t open_cluster(std::size_t i);
  void refresh_error_cache();
  void refresh_new_cluster_cache();
  /// Rebuilds the new-cluster cache if a scale or kernel changed since the last build.
  void ensure_new_cluster_cache();
  void refresh_theta_whitened();
  double log_lik_existing(std::size_t i, std::size_t k) const;
  BandedSPD realize_error(const KernelSpec& unit) const;
  BandedSPD realize_mean(const KernelSpec& unit) const;
  std::optional<CholeskyFactor> try_factorize(BandedSPD& a) const;
  CholeskyFactor factorize(BandedSPD& a) const;
  double error_residual_quad(const CholeskyFactor& r_factor) const;
  double mean_quad(const CholeskyFactor& r_factor) const;
  void mh_error_kernel();
  void mh_mean_kernel();
  double propose_log_length(double current);

  std::vector<Vector> y_;
  Grid grid_;
  SamplerConfig config_;
  ModelStructure structure_;
  RngStream rng_;
  ChainState state_;
  std::size_t n_ = 0;
  std::size_t m_ = 0;

  // Realized unit-scale correlations and their factors.
  std::optional<BandedSPD> r_y_;
  std::optional<CholeskyFactor> r_y_factor_;
  std::optional<BandedSPD> r_mu_;
  std::optional<CholeskyFactor> r_mu_factor_;
  // Factor of τ_y² R_y + τ_μ² R_μ, the marginal covariance of a new cluster's curve.
  std::optional<BandedSPD> c_new_;
  std::optional<CholeskyFactor> c_new_factor_;
  // L_y⁻¹ y_i and L_y⁻¹ θ_k with L_y the factor of R_y.
  std::vector<Vector> y_whitened_;
  std::vector<Vector> theta_whitened_;
  std::vector<double> log_lik_new_;
  bool new_cluster_stale_ = true;

  std::size_t error_accepts_ = 0;
  std::size_t mean_accepts_ = 0;
};

/// Runs the configured number of iterations from the standard initialization
/// (one cluster, θ₁ from its prior) and keeps every post-burn-in draw.
/// A numerical failure aborts with ChainAborted naming the iteration.
ChainTrace run_chain(const Matrix& y, const Grid& grid, const SamplerConfig& config, RngStream& rng);

class ChainAborted : public std::runtime_error {
 public:
  ChainAborted(const std::string& what, std::size_t iteration)
      : std::runtime_error(what), iteration_(iteration) {}
  std::size_t iteration() const noexcept { return iteration_; }

 private:
  std::size_t iteration_;
};

/// Posterior probability of acceptance min(1, e^{log_ratio}).
double mh_accept_probability(double log_ratio);

}  // namespace fclust
