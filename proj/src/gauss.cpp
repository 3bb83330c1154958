#include "fclust/gauss.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fclust/error.hpp"

namespace fclust {
namespace {
const double kLog2Pi = std::log(2.0 * std::numbers::pi);
}

double log_pdf(const Vector& y, const Vector& mean, const CholeskyFactor& cov_factor) {
  if (y.size() != mean.size()) throw DimensionError("log_pdf: observation and mean differ in length");
  return log_pdf_centered(y - mean, cov_factor);
}

double log_pdf(const Vector& y, const MvnParams& p) { return log_pdf(y, p.mean, p.cov_factor); }

double log_pdf_centered(const Vector& y, const CholeskyFactor& cov_factor) {
  const double m = static_cast<double>(cov_factor.dim());
  return -0.5 * m * kLog2Pi - 0.5 * cov_factor.logdet() - 0.5 * cov_factor.quad_form(y);
}

Vector standard_normal(Eigen::Index m, RngStream& rng) {
  Vector z(m);
  for (Eigen::Index j = 0; j < m; ++j) z[j] = rng.normal();
  return z;
}

Vector sample(const Vector& mean, const CholeskyFactor& cov_factor, RngStream& rng) {
  if (static_cast<std::size_t>(mean.size()) != cov_factor.dim()) throw DimensionError("sample: mean/factor mismatch");
  return mean + cov_factor.lower_multiply(standard_normal(mean.size(), rng));
}

Vector sample(const MvnParams& p, RngStream& rng) { return sample(p.mean, p.cov_factor, rng); }

double log_sum_exp(const std::vector<double>& x) {
  if (x.empty()) return -std::numeric_limits<double>::infinity();
  const double top = *std::max_element(x.begin(), x.end());
  if (!std::isfinite(top)) return top;
  double acc = 0.0;
  for (double v : x) acc += std::exp(v - top);
  return top + std::log(acc);
}

}  // namespace fclust
