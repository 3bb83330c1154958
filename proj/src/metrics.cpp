#include "fclust/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "fclust/error.hpp"

namespace fclust {
namespace {

__extension__ typedef __int128 Wide;

Wide choose2(std::size_t n) {
  const Wide w = static_cast<Wide>(n);
  return w * (w - 1) / 2;
}

}  // namespace

ContingencyTable contingency_table(const Labels& a, const Labels& b) {
  if (a.size() != b.size()) throw DimensionError("labelings differ in length");
  const Labels ca = canonicalize(a), cb = canonicalize(b);
  ContingencyTable t;
  t.rows = count_clusters(ca);
  t.cols = count_clusters(cb);
  t.counts.assign(t.rows * t.cols, 0);
  t.row_sums.assign(t.rows, 0);
  t.col_sums.assign(t.cols, 0);
  t.total = a.size();
  for (std::size_t i = 0; i < ca.size(); ++i) {
    ++t.counts[ca[i] * t.cols + cb[i]];
    ++t.row_sums[ca[i]];
    ++t.col_sums[cb[i]];
  }
  return t;
}

double adjusted_rand_index(const Labels& z_true, const Labels& z_hat) {
  const ContingencyTable t = contingency_table(z_true, z_hat);
  if (t.total < 2) throw ParameterError("ARI needs at least two items");
  Wide index = 0, sum_a = 0, sum_b = 0;
  for (std::size_t c : t.counts) index += choose2(c);
  for (std::size_t a : t.row_sums) sum_a += choose2(a);
  for (std::size_t b : t.col_sums) sum_b += choose2(b);
  const Wide pairs = choose2(t.total);
  // With E = sum_a·sum_b/pairs and M = (sum_a + sum_b)/2, scale through by 2·pairs to stay integral.
  const Wide numerator = 2 * (index * pairs - sum_a * sum_b);
  const Wide denominator = (sum_a + sum_b) * pairs - 2 * sum_a * sum_b;
  if (denominator == 0) return canonicalize(z_true) == canonicalize(z_hat) ? 1.0 : 0.0;
  return static_cast<double>(numerator) / static_cast<double>(denominator);
}

double purity(const Labels& z_true, const Labels& z_hat) {
  const ContingencyTable t = contingency_table(z_hat, z_true);
  if (t.total == 0) throw ParameterError("purity needs at least one item");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < t.rows; ++i) {
    std::size_t best = 0;
    for (std::size_t j = 0; j < t.cols; ++j) best = std::max(best, t(i, j));
    hits += best;
  }
  return static_cast<double>(hits) / static_cast<double>(t.total);
}

double rmse_theta(const std::vector<Vector>& theta_hat, const Labels& z_hat, const std::vector<Vector>& theta_true,
                  const Labels& z_true) {
  if (z_hat.size() != z_true.size()) throw DimensionError("labelings differ in length");
  if (z_hat.empty()) throw ParameterError("rmse_theta needs at least one item");
  double total = 0.0;
  for (std::size_t i = 0; i < z_hat.size(); ++i) {
    if (z_hat[i] >= theta_hat.size() || z_true[i] >= theta_true.size())
      throw DimensionError("label without a cluster mean");
    const Vector& a = theta_hat[z_hat[i]];
    const Vector& b = theta_true[z_true[i]];
    if (a.size() != b.size() || a.size() == 0) throw DimensionError("cluster means differ in length");
    total += std::sqrt((a - b).squaredNorm() / static_cast<double>(a.size()));
  }
  return total / static_cast<double>(z_hat.size());
}

}  // namespace fclust
