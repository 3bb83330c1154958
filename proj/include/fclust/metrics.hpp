#pragma once

#include <cstddef>
#include <vector>

#include "fclust/blinalg.hpp"
#include "fclust/partition.hpp"

namespace fclust {

/// Cross-tabulation of two labelings of the same items.
struct ContingencyTable {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::size_t> counts;  // row-major rows × cols
  std::vector<std::size_t> row_sums;
  std::vector<std::size_t> col_sums;
  std::size_t total = 0;

  std::size_t operator()(std::size_t i, std::size_t j) const { return counts[i * cols + j]; }
};

/// Labels need not be canonical. Throws DimensionError on a length mismatch.
ContingencyTable contingency_table(const Labels& a, const Labels& b);

/// Adjusted Rand index. Returns 1 when the partitions coincide, including the
/// degenerate case where the chance-corrected denominator vanishes.
double adjusted_rand_index(const Labels& z_true, const Labels& z_hat);

/// Fraction of items that share their predicted cluster's majority true label.
double purity(const Labels& z_true, const Labels& z_hat);

/// (1/n) Σ_i sqrt((1/m) Σ_j (θ̂_{ẑ_i}(x_j) − θ_{z_i}(x_j))²).
double rmse_theta(const std::vector<Vector>& theta_hat, const Labels& z_hat, const std::vector<Vector>& theta_true,
                  const Labels& z_true);

}  // namespace fclust
