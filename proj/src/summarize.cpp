#include "fclust/summarize.hpp"

#include <cmath>
#include <limits>
#include <map>

#include "fclust/error.hpp"

namespace fclust {
namespace {

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

void require_draws(std::span<const PartitionSample> draws) {
  if (draws.empty()) throw ParameterError("empty trace");
  const std::size_t n = draws.front().z.size();
  for (const PartitionSample& d : draws)
    if (d.z.size() != n) throw DimensionError("draws differ in length");
}

// n·VI from cluster sizes of each side and the joint counts.
double scaled_vi(const Labels& p, std::size_t kp, const Labels& q, std::size_t kq) {
  std::vector<std::size_t> np(kp, 0), nq(kq, 0), joint(kp * kq, 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    ++np[p[i]];
    ++nq[q[i]];
    ++joint[p[i] * kq + q[i]];
  }
  double s = 0.0;
  for (std::size_t c : np) s += xlogx(static_cast<double>(c));
  for (std::size_t c : nq) s += xlogx(static_cast<double>(c));
  for (std::size_t c : joint) s -= 2.0 * xlogx(static_cast<double>(c));
  return s;
}

struct WeightedDraw {
  const PartitionSample* draw;
  double weight;
};

std::vector<WeightedDraw> distinct_draws(std::span<const PartitionSample> draws) {
  std::map<Labels, std::size_t> index;
  std::vector<WeightedDraw> out;
  for (const PartitionSample& d : draws) {
    auto [it, inserted] = index.try_emplace(d.z, out.size());
    if (inserted)
      out.push_back({&d, 1.0});
    else
      out[it->second].weight += 1.0;
  }
  return out;
}

double weighted_expected_vi(const Labels& c, std::size_t kc, const std::vector<WeightedDraw>& draws, double total) {
  double s = 0.0;
  for (const WeightedDraw& d : draws) s += d.weight * scaled_vi(c, kc, d.draw->z, d.draw->K);
  return s / (total * static_cast<double>(c.size()));
}

// One pass of single-item moves; each item goes to the existing or new
// cluster that lowers expected VI the most.
Labels greedy_refine(Labels z, const std::vector<WeightedDraw>& draws, double total) {
  const std::size_t n = z.size();
  const std::size_t cap = n + 1;  // labels never exceed n
  std::vector<double> sizes(cap, 0.0);
  for (std::size_t label : z) sizes[label] += 1.0;
  std::vector<std::vector<double>> joint(draws.size());
  for (std::size_t d = 0; d < draws.size(); ++d) {
    joint[d].assign(cap * draws[d].draw->K, 0.0);
    for (std::size_t i = 0; i < n; ++i) joint[d][z[i] * draws[d].draw->K + draws[d].draw->z[i]] += 1.0;
  }
  auto delta_f = [](double x, double by) { return xlogx(x + by) - xlogx(x); };
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t a = z[i];
    std::size_t empty = cap;
    for (std::size_t c = 0; c < cap; ++c)
      if (sizes[c] == 0.0) {
        empty = c;
        break;
      }
    double best_delta = -1e-12;
    std::size_t best = a;
    for (std::size_t b = 0; b < cap; ++b) {
      if (b == a || (sizes[b] == 0.0 && b != empty)) continue;
      double d_own = delta_f(sizes[a], -1.0) + delta_f(sizes[b], 1.0);
      double d_joint = 0.0;
      for (std::size_t d = 0; d < draws.size(); ++d) {
        const std::size_t kq = draws[d].draw->K, l = draws[d].draw->z[i];
        d_joint += draws[d].weight * (delta_f(joint[d][a * kq + l], -1.0) + delta_f(joint[d][b * kq + l], 1.0));
      }
      const double delta = d_own - 2.0 * d_joint / total;
      if (delta < best_delta) {
        best_delta = delta;
        best = b;
      }
    }
    if (best == a) continue;
    sizes[a] -= 1.0;
    sizes[best] += 1.0;
    for (std::size_t d = 0; d < draws.size(); ++d) {
      const std::size_t kq = draws[d].draw->K, l = draws[d].draw->z[i];
      joint[d][a * kq + l] -= 1.0;
      joint[d][best * kq + l] += 1.0;
    }
    z[i] = best;
  }
  return canonicalize(z);
}

}  // namespace

double variation_of_information(const Labels& p, const Labels& q) {
  if (p.size() != q.size()) throw DimensionError("partitions differ in length");
  if (p.empty()) return 0.0;
  const Labels cp = canonicalize(p), cq = canonicalize(q);
  const double vi = scaled_vi(cp, count_clusters(cp), cq, count_clusters(cq)) / static_cast<double>(p.size());
  return vi > 0.0 ? vi : 0.0;
}

double variation_of_information(const PartitionSample& p, const PartitionSample& q) {
  return variation_of_information(p.z, q.z);
}

double expected_vi(const Labels& candidate, std::span<const PartitionSample> draws) {
  require_draws(draws);
  if (candidate.size() != draws.front().z.size()) throw DimensionError("candidate differs in length from the draws");
  double s = 0.0;
  for (const PartitionSample& d : draws) s += variation_of_information(candidate, d.z);
  return s / static_cast<double>(draws.size());
}

PartitionSample vi_point_estimate(std::span<const PartitionSample> draws) {
  require_draws(draws);
  std::vector<PartitionSample> canonical;
  canonical.reserve(draws.size());
  for (const PartitionSample& d : draws) canonical.push_back(make_partition(d.z));
  const std::vector<WeightedDraw> distinct = distinct_draws(canonical);
  const double total = static_cast<double>(canonical.size());

  std::size_t best = 0;
  double best_value = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < distinct.size(); ++c) {
    const double v = weighted_expected_vi(distinct[c].draw->z, distinct[c].draw->K, distinct, total);
    if (v < best_value) {
      best_value = v;
      best = c;
    }
  }
  const Labels refined = greedy_refine(distinct[best].draw->z, distinct, total);
  const double refined_value = weighted_expected_vi(refined, count_clusters(refined), distinct, total);
  if (refined_value < best_value) return make_partition(refined);
  return *distinct[best].draw;
}

double posterior_mean_K(std::span<const PartitionSample> draws) {
  require_draws(draws);
  double s = 0.0;
  for (const PartitionSample& d : draws) s += static_cast<double>(d.K);
  return s / static_cast<double>(draws.size());
}

double posterior_mean_K(const ChainTrace& trace) {
  std::vector<PartitionSample> parts;
  parts.reserve(trace.draws.size());
  for (const TraceDraw& d : trace.draws) parts.push_back(d.partition);
  return posterior_mean_K(parts);
}

PointHyperparameters posterior_hyperparameters(const ChainTrace& trace) {
  if (trace.draws.empty()) throw ParameterError("empty trace");
  const ModelStructure& model = trace.model;
  const double count = static_cast<double>(trace.draws.size());
  double tau_y2 = 0.0, tau_mu2 = 0.0, ell_y = 0.0, ell_mu = 0.0;
  std::map<double, std::size_t> nu_counts;
  for (const TraceDraw& d : trace.draws) {
    tau_y2 += d.tau_y2;
    tau_mu2 += d.tau_mu2;
    ell_y += d.ell_y;
    ell_mu += d.ell_mu;
    if (!std::isnan(d.nu)) ++nu_counts[d.nu];
  }
  PointHyperparameters h;
  h.tau_y2 = tau_y2 / count;
  h.tau_mu2 = tau_mu2 / count;
  h.mean_kernel = {model.mean_family, 1.0, ell_mu / count, 0.5};
  switch (model.error_kind) {
    case ErrorKind::IID: h.error_kernel = {KernelFamily::IID, 1.0, 1.0, 0.5}; break;
    case ErrorKind::Oracle:
      h.error_kernel = model.oracle_kernel;
      h.error_kernel.scale = 1.0;
      break;
    default: {
      if (nu_counts.empty()) throw ParameterError("trace holds no smoothness draws");
      double mode = nu_counts.begin()->first;
      std::size_t mode_count = 0;
      for (const auto& [nu, c] : nu_counts)
        if (c > mode_count) {
          mode = nu;
          mode_count = c;
        }
      h.error_kernel = {matern_family(mode), 1.0, ell_y / count, 0.5};
    }
  }
  return h;
}

std::vector<Vector> posterior_cluster_means(const Matrix& y, const Grid& grid, const Labels& z,
                                            const ModelStructure& model, const PointHyperparameters& hyper) {
  if (static_cast<std::size_t>(y.rows()) != z.size()) throw DimensionError("label count differs from curve count");
  if (static_cast<std::size_t>(y.cols()) != grid.size()) throw DimensionError("data width differs from the grid");
  const std::size_t K = z.empty() ? 0 : count_clusters(z);
  std::vector<Vector> sums(K, Vector::Zero(y.cols()));
  std::vector<std::size_t> counts(K, 0);
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (z[i] >= K) throw ParameterError("labels must be canonical");
    sums[z[i]] += y.row(static_cast<Eigen::Index>(i)).transpose();
    ++counts[z[i]];
  }
  BandedSPD r_y = realize_error_correlation(model, hyper.error_kernel, grid);
  const CholeskyFactor f_y = factorize_for(model, r_y);
  BandedSPD r_mu = realize_mean_correlation(model, hyper.mean_kernel, grid);
  const CholeskyFactor f_mu = factorize_for(model, r_mu);
  std::vector<Vector> out;
  out.reserve(K);
  for (std::size_t k = 0; k < K; ++k) {
    const ClusterMeanPosterior post({r_mu, f_mu, hyper.tau_mu2}, {r_y, f_y, hyper.tau_y2}, counts[k], sums[k],
                                    model.dense_factorization);
    out.push_back(post.mean());
  }
  return out;
}

std::vector<Vector> estimate_cluster_means(const ChainTrace& trace, const Matrix& y, const Grid& grid,
                                           const PartitionSample& point_estimate) {
  return posterior_cluster_means(y, grid, canonicalize(point_estimate.z), trace.model,
                                 posterior_hyperparameters(trace));
}

}  // namespace fclust
