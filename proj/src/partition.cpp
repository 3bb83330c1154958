#include "fclust/partition.hpp"

#include <algorithm>
#include <unordered_map>

namespace fclust {

Labels canonicalize(const Labels& z) {
  std::unordered_map<std::size_t, std::size_t> remap;
  Labels out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    auto [it, inserted] = remap.try_emplace(z[i], remap.size());
    out[i] = it->second;
  }
  return out;
}

PartitionSample make_partition(const Labels& z) {
  PartitionSample p{canonicalize(z), 0};
  for (std::size_t label : p.z) p.K = std::max(p.K, label + 1);
  return p;
}

std::size_t count_clusters(const Labels& z) {
  std::unordered_map<std::size_t, bool> seen;
  for (std::size_t label : z) seen[label] = true;
  return seen.size();
}

}  // namespace fclust
