#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "fclust/blinalg.hpp"

namespace fclust {

/// Ordered observation points, strictly increasing and finite, at least two.
class Grid {
 public:
  explicit Grid(std::vector<double> points);

  /// x_j = j / m for j = 1..m. The origin is excluded so that fBm covariances
  /// stay nonsingular.
  static Grid equispaced(std::size_t m);
  /// x_j = j for j = 1..m: integer lags, unit spacing.
  static Grid index(std::size_t m);

  std::size_t size() const noexcept { return points_.size(); }
  double operator[](std::size_t j) const { return points_[j]; }
  const std::vector<double>& points() const noexcept { return points_; }

 private:
  std::vector<double> points_;
};

enum class KernelFamily { MaternHalf, MaternThreeHalves, MaternFiveHalves, GaussianSE, FBM, IID };

std::string_view to_string(KernelFamily family);
KernelFamily parse_kernel_family(std::string_view name);

/// Matérn smoothness ν of a family (∞ for GaussianSE); NaN for FBM and IID.
double smoothness(KernelFamily family);
/// Inverse of smoothness() over the Matérn families.
KernelFamily matern_family(double nu);

struct KernelSpec {
  KernelFamily family = KernelFamily::MaternHalf;
  double scale = 1.0;   // τ² (σ² for FBM and IID)
  double length = 1.0;  // ℓ, unused by FBM and IID
  double hurst = 0.5;   // H, FBM only

  /// Throws ParameterError when a parameter is outside its domain.
  void validate() const;
  bool uses_length() const noexcept {
    return family != KernelFamily::FBM && family != KernelFamily::IID;
  }

  friend bool operator==(const KernelSpec&, const KernelSpec&) = default;
};

/// Kernel value k(x, x'); no jitter.
double kernel_value(const KernelSpec& spec, double x, double x_prime);

/// Relative jitter added to every constructed covariance diagonal.
inline constexpr double kCovarianceJitter = 1e-10;

/// m×m covariance on the grid plus kCovarianceJitter·scale·I. Throws
/// ParameterError on an invalid spec and NumericalError if the result is
/// not positive definite.
Matrix build_covariance(const KernelSpec& spec, const Grid& grid);

/// min(⌈multiplier·log m⌉, m − 1), natural log.
std::size_t select_bandwidth(std::size_t m, double multiplier = 3.0);

/// Zeroes entries with |i − j| > r; no positive-definiteness correction.
Matrix band_part(const Matrix& dense, std::size_t r);

/// Band truncation with the minimal diagonal shift that keeps the result
/// positive definite: if λ_min ≤ ε = 1e-8·max diag, adds (ε − λ_min)·I.
/// r ≥ m − 1 returns the input unchanged.
BandedSPD band_truncate(const Matrix& dense, std::size_t r);

/// Closed-form tail bound 2·r^{ν−1/2}·e^{−r}·r/(r − ν + 1/2) on the operator
/// norm of the off-band part of a Matérn covariance at integer lags.
/// Throws DomainError unless ν > 0, r + 1 > ν − 1/2 and r > ν − 1/2.
double band_tail_bound(double nu, double r);

}  // namespace fclust
