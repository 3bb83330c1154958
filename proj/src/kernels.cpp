#include "fclust/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fclust/error.hpp"

namespace fclust {

Grid::Grid(std::vector<double> points) : points_(std::move(points)) {
  if (points_.size() < 2) throw ParameterError("a grid needs at least two points");
  for (std::size_t j = 0; j < points_.size(); ++j) {
    if (!std::isfinite(points_[j])) throw ParameterError("grid points must be finite");
    if (j > 0 && !(points_[j] > points_[j - 1])) throw ParameterError("grid points must be strictly increasing");
  }
}

Grid Grid::equispaced(std::size_t m) {
  std::vector<double> x(m);
  for (std::size_t j = 0; j < m; ++j) x[j] = static_cast<double>(j + 1) / static_cast<double>(m);
  return Grid(std::move(x));
}

Grid Grid::index(std::size_t m) {
  std::vector<double> x(m);
  for (std::size_t j = 0; j < m; ++j) x[j] = static_cast<double>(j + 1);
  return Grid(std::move(x));
}

std::string_view to_string(KernelFamily family) {
  switch (family) {
    case KernelFamily::MaternHalf: return "matern12";
    case KernelFamily::MaternThreeHalves: return "matern32";
    case KernelFamily::MaternFiveHalves: return "matern52";
    case KernelFamily::GaussianSE: return "gaussian";
    case KernelFamily::FBM: return "fbm";
    case KernelFamily::IID: return "iid";
  }
  return "unknown";
}

KernelFamily parse_kernel_family(std::string_view name) {
  if (name == "matern12" || name == "exp" || name == "exponential") return KernelFamily::MaternHalf;
  if (name == "matern32") return KernelFamily::MaternThreeHalves;
  if (name == "matern52") return KernelFamily::MaternFiveHalves;
  if (name == "gaussian" || name == "se") return KernelFamily::GaussianSE;
  if (name == "fbm") return KernelFamily::FBM;
  if (name == "iid") return KernelFamily::IID;
  throw ParameterError("unknown kernel family '" + std::string(name) + "'");
}

double smoothness(KernelFamily family) {
  switch (family) {
    case KernelFamily::MaternHalf: return 0.5;
    case KernelFamily::MaternThreeHalves: return 1.5;
    case KernelFamily::MaternFiveHalves: return 2.5;
    case KernelFamily::GaussianSE: return std::numeric_limits<double>::infinity();
    default: return std::numeric_limits<double>::quiet_NaN();
  }
}

KernelFamily matern_family(double nu) {
  if (nu == 0.5) return KernelFamily::MaternHalf;
  if (nu == 1.5) return KernelFamily::MaternThreeHalves;
  if (nu == 2.5) return KernelFamily::MaternFiveHalves;
  if (std::isinf(nu) && nu > 0) return KernelFamily::GaussianSE;
  throw ParameterError("unsupported Matérn smoothness " + std::to_string(nu));
}

void KernelSpec::validate() const {
  if (!(scale > 0.0) || !std::isfinite(scale)) throw ParameterError("kernel scale must be positive and finite");
  if (uses_length() && (!(length > 0.0) || !std::isfinite(length)))
    throw ParameterError("kernel length-scale must be positive and finite");
  if (family == KernelFamily::FBM && !(hurst > 0.0 && hurst < 1.0))
    throw ParameterError("Hurst parameter must lie in (0, 1)");
}

double kernel_value(const KernelSpec& spec, double x, double x_prime) {
  const double d = std::abs(x - x_prime);
  const double s = spec.scale;
  switch (spec.family) {
    case KernelFamily::MaternHalf: return s * std::exp(-d / spec.length);
    case KernelFamily::MaternThreeHalves: {
      const double u = std::sqrt(3.0) * d / spec.length;
      return s * (1.0 + u) * std::exp(-u);
    }
    case KernelFamily::MaternFiveHalves: {
      const double u = std::sqrt(5.0) * d / spec.length;
      return s * (1.0 + u + u * u / 3.0) * std::exp(-u);
    }
    case KernelFamily::GaussianSE: return s * std::exp(-d * d / (2.0 * spec.length * spec.length));
    case KernelFamily::FBM: {
      const double h2 = 2.0 * spec.hurst;
      return 0.5 * s * (std::pow(std::abs(x), h2) + std::pow(std::abs(x_prime), h2) - std::pow(d, h2));
    }
    case KernelFamily::IID: return x == x_prime ? s : 0.0;
  }
  return 0.0;
}

Matrix build_covariance(const KernelSpec& spec, const Grid& grid) {
  spec.validate();
  const auto m = static_cast<Eigen::Index>(grid.size());
  Matrix c(m, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index k = 0; k <= j; ++k) {
      const double v = kernel_value(spec, grid[static_cast<std::size_t>(j)], grid[static_cast<std::size_t>(k)]);
      c(j, k) = v;
      c(k, j) = v;
    }
  }
  c.diagonal().array() += kCovarianceJitter * spec.scale;
  Eigen::LLT<Matrix> llt(c);
  if (llt.info() != Eigen::Success)
    throw NumericalError("covariance for kernel '" + std::string(to_string(spec.family)) +
                         "' is not positive definite after jitter");
  return c;
}

std::size_t select_bandwidth(std::size_t m, double multiplier) {
  if (m < 2) throw ParameterError("bandwidth selection needs m >= 2");
  if (!(multiplier > 0.0)) throw ParameterError("bandwidth multiplier must be positive");
  const double r = std::ceil(multiplier * std::log(static_cast<double>(m)));
  return std::min(static_cast<std::size_t>(r), m - 1);
}

Matrix band_part(const Matrix& dense, std::size_t r) {
  Matrix out = dense;
  for (Eigen::Index i = 0; i < out.rows(); ++i)
    for (Eigen::Index j = 0; j < out.cols(); ++j)
      if (static_cast<std::size_t>(std::abs(i - j)) > r) out(i, j) = 0.0;
  return out;
}

BandedSPD band_truncate(const Matrix& dense, std::size_t r) {
  if (dense.rows() != dense.cols()) throw DimensionError("band truncation of a non-square matrix");
  const auto m = static_cast<std::size_t>(dense.rows());
  BandedSPD out = BandedSPD::from_dense(dense, r);
  if (r + 1 >= m) return out;
  const double eps = 1e-8 * out.max_diagonal();
  // A successful factorization of A − εI certifies λ_min > ε without an eigensolve.
  BandedSPD probe = out;
  probe.add_diagonal(-eps);
  try {
    (void)banded_cholesky(probe);
    return out;
  } catch (const NotPositiveDefinite&) {
  }
  const double lambda_min = min_eigenvalue(band_part(dense, r));
  if (lambda_min <= eps) out.apply_diagonal_shift(eps - lambda_min);
  return out;
}

double band_tail_bound(double nu, double r) {
  if (!(nu > 0.0)) throw DomainError("band tail bound needs nu > 0");
  const double excess = nu - 0.5;
  if (!(r + 1.0 > excess)) throw DomainError("band tail bound needs r + 1 > nu - 1/2");
  if (!(r - excess > 0.0)) throw DomainError("band tail bound needs r > nu - 1/2 (denominator vanishes)");
  return 2.0 * std::pow(r, excess) * std::exp(-r) * r / (r - excess);
}

}  // namespace fclust
