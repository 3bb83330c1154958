#pragma once

#include <span>
#include <vector>

#include "fclust/blinalg.hpp"
#include "fclust/kernels.hpp"
#include "fclust/partition.hpp"
#include "fclust/sampler.hpp"

namespace fclust {

/// VI(p, q) = H(p) + H(q) − 2 I(p, q), natural log.
double variation_of_information(const Labels& p, const Labels& q);
double variation_of_information(const PartitionSample& p, const PartitionSample& q);

/// Mean VI distance from a candidate to every stored draw.
double expected_vi(const Labels& candidate, std::span<const PartitionSample> draws);

/// Minimizer of the posterior expected VI over the distinct stored draws,
/// refined by one greedy pass of single-item moves. Canonical labels.
PartitionSample vi_point_estimate(std::span<const PartitionSample> draws);

double posterior_mean_K(std::span<const PartitionSample> draws);
double posterior_mean_K(const ChainTrace& trace);

/// Plug-in hyperparameters for the cluster-mean estimate.
struct PointHyperparameters {
  double tau_y2 = 1.0;
  double tau_mu2 = 1.0;
  KernelSpec error_kernel;  // unit scale
  KernelSpec mean_kernel;   // unit scale
};

/// Posterior means of τ_y², τ_μ², ℓ_y, ℓ_μ and the posterior mode of ν.
PointHyperparameters posterior_hyperparameters(const ChainTrace& trace);

/// Conditional posterior mean of each cluster mean given the labels z
/// (canonical, K clusters) and fixed hyperparameters.
std::vector<Vector> posterior_cluster_means(const Matrix& y, const Grid& grid, const Labels& z,
                                            const ModelStructure& model, const PointHyperparameters& hyper);

/// posterior_cluster_means at the trace's posterior hyperparameters.
std::vector<Vector> estimate_cluster_means(const ChainTrace& trace, const Matrix& y, const Grid& grid,
                                           const PartitionSample& point_estimate);

}  // namespace fclust
