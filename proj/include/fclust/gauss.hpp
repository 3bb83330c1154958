#pragma once

#include "fclust/blinalg.hpp"
#include "fclust/rng.hpp"

namespace fclust {

/// N(mean, L Lᵀ).
struct MvnParams {
  Vector mean;
  CholeskyFactor cov_factor;
};

/// log φ(y | mean, Σ) with Σ = L Lᵀ:
/// −(m/2)·log 2π − ½·logdet Σ − ½·(y − mean)ᵀ Σ⁻¹ (y − mean).
double log_pdf(const Vector& y, const Vector& mean, const CholeskyFactor& cov_factor);
double log_pdf(const Vector& y, const MvnParams& p);
/// Zero-mean variant.
double log_pdf_centered(const Vector& y, const CholeskyFactor& cov_factor);

/// mean + L z, z ~ N(0, I).
Vector sample(const Vector& mean, const CholeskyFactor& cov_factor, RngStream& rng);
Vector sample(const MvnParams& p, RngStream& rng);
/// Vector of i.i.d. standard normals.
Vector standard_normal(Eigen::Index m, RngStream& rng);

/// log Σ exp(x), stable for large magnitudes; −∞ for an all −∞ input.
double log_sum_exp(const std::vector<double>& x);

}  // namespace fclust
