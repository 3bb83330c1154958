#pragma once

#include <cstddef>
#include <vector>

namespace fclust {

/// Cluster labels, 0-based, one per item.
using Labels = std::vector<std::size_t>;

/// One partition draw in canonical form: labels relabeled by order of first
/// appearance, so equal partitions compare equal.
struct PartitionSample {
  Labels z;
  std::size_t K = 0;

  friend bool operator==(const PartitionSample&, const PartitionSample&) = default;
};

/// Relabel by order of first appearance (0, 1, 2, ...).
Labels canonicalize(const Labels& z);
PartitionSample make_partition(const Labels& z);
/// Number of distinct labels.
std::size_t count_clusters(const Labels& z);

}  // namespace fclust
