#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fclust/error.hpp"
#include "fclust/gauss.hpp"
#include "fclust/rng.hpp"
#include "fclust/simgen.hpp"
#include "fclust/summarize.hpp"
#include "oracles.hpp"

using namespace fclust;

TEST(Vi, Examples) {
  EXPECT_EQ(variation_of_information(Labels{0, 1, 1, 2}, Labels{0, 1, 1, 2}), 0.0);
  EXPECT_NEAR(variation_of_information(Labels{0, 0, 0, 0}, Labels{0, 1, 2, 3}), std::log(4.0), 1e-15);
  EXPECT_THROW(variation_of_information(Labels{0, 0}, Labels{0}), DimensionError);
}

TEST(Vi, MatchesEntropyOracleOnAllSmallPartitions) {
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto parts = oracle::all_partitions(n);
    for (const auto& a : parts)
      for (const auto& b : parts) ASSERT_NEAR(variation_of_information(a, b), oracle::entropy_vi(a, b), 1e-12);
  }
}

TEST(Vi, MetricAxiomsOnExhaustiveTriples) {
  const auto parts = oracle::all_partitions(5);
  for (const auto& a : parts)
    for (const auto& b : parts) {
      const double ab = variation_of_information(a, b);
      ASSERT_GE(ab, 0.0);
      ASSERT_NEAR(ab, variation_of_information(b, a), 1e-14);
      if (a != b) ASSERT_GT(ab, 1e-12);
      for (std::size_t k = 0; k < parts.size(); k += 7) {
        const auto& c = parts[k];
        ASSERT_LE(ab, variation_of_information(a, c) + variation_of_information(c, b) + 1e-12);
      }
    }
}

TEST(Vi, MetricAxiomsOnFuzzedTriples) {
  RngStream rng(4);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 1 + rng.uniform_index(10);
    Labels a(n), b(n), c(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = rng.uniform_index(4);
      b[i] = rng.uniform_index(4);
      c[i] = rng.uniform_index(4);
    }
    const double ab = variation_of_information(a, b);
    EXPECT_GE(ab, 0.0);
    EXPECT_NEAR(ab, variation_of_information(b, a), 1e-15);
    EXPECT_LE(ab, variation_of_information(a, c) + variation_of_information(c, b) + 1e-12);
  }
}

TEST(PointEstimate, AllIdentical) {
  const PartitionSample p = make_partition({0, 0, 1, 1, 2});
  const std::vector<PartitionSample> draws(5, p);
  EXPECT_EQ(vi_point_estimate(draws), p);
}

TEST(PointEstimate, MajorityDrawWins) {
  const PartitionSample p = make_partition({0, 0, 0, 1, 1, 1});
  const PartitionSample q = make_partition({0, 1, 0, 1, 0, 1});
  const std::vector<PartitionSample> draws{p, q, p};
  EXPECT_EQ(vi_point_estimate(draws), p);
  EXPECT_THROW(vi_point_estimate(std::vector<PartitionSample>{}), ParameterError);
}

TEST(PointEstimate, NeverWorseThanBestDrawAndRelabelInvariant) {
  RngStream rng(8);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 3 + rng.uniform_index(10);
    std::vector<PartitionSample> draws;
    Labels base(n);
    for (auto& v : base) v = rng.uniform_index(3);
    for (int d = 0; d < 15; ++d) {
      Labels z = base;
      for (int f = 0; f < 2; ++f) z[rng.uniform_index(n)] = rng.uniform_index(4);
      draws.push_back(make_partition(z));
    }
    const PartitionSample est = vi_point_estimate(draws);
    double best = 1e300;
    for (const auto& d : draws) best = std::min(best, expected_vi(d.z, draws));
    EXPECT_LE(expected_vi(est.z, draws), best + 1e-12);
    EXPECT_EQ(est.z, canonicalize(est.z));

    std::vector<PartitionSample> relabeled;
    for (const auto& d : draws) {
      PartitionSample r = d;
      for (auto& v : r.z) v = 9 - v;
      relabeled.push_back(r);
    }
    EXPECT_EQ(vi_point_estimate(relabeled), est);
  }
}

TEST(PosteriorMeanK, Examples) {
  std::vector<PartitionSample> draws{make_partition({0, 1, 0, 0}), make_partition({0, 1, 1, 1}),
                                     make_partition({0, 1, 2, 3})};
  EXPECT_NEAR(posterior_mean_K(draws), 8.0 / 3.0, 1e-15);
  draws.resize(2);
  EXPECT_EQ(posterior_mean_K(draws), 2.0);
  EXPECT_THROW(posterior_mean_K(std::vector<PartitionSample>{}), ParameterError);
}

TEST(PosteriorMeanK, RecountAndRange) {
  RngStream rng(2);
  std::vector<PartitionSample> draws;
  double recount = 0;
  const std::size_t n = 9;
  for (int d = 0; d < 50; ++d) {
    Labels z(n);
    for (auto& v : z) v = rng.uniform_index(5);
    draws.push_back(make_partition(z));
    std::vector<bool> seen(5, false);
    std::size_t k = 0;
    for (auto v : z) k += !seen[v], seen[v] = true;
    recount += static_cast<double>(k);
  }
  const double mk = posterior_mean_K(draws);
  EXPECT_NEAR(mk, recount / 50, 1e-12);
  EXPECT_GE(mk, 1.0);
  EXPECT_LE(mk, static_cast<double>(n));
}

namespace {

PointHyperparameters iid_hyper(double tau_y2, double tau_mu2) {
  PointHyperparameters h;
  h.tau_y2 = tau_y2;
  h.tau_mu2 = tau_mu2;
  h.error_kernel = {KernelFamily::IID, 1.0, 1.0, 0.5};
  h.mean_kernel = {KernelFamily::GaussianSE, 1.0, 0.15, 0.5};
  return h;
}

ModelStructure iid_structure(std::size_t m) {
  SamplerConfig c;
  c.error_kind = ErrorKind::IID;
  return ModelStructure::from_config(c, m);
}

}  // namespace

TEST(ClusterMeans, FlatPriorLimitIsAverage) {
  const std::size_t m = 6;
  RngStream rng(1);
  Matrix y(10, m);
  for (Eigen::Index i = 0; i < y.rows(); ++i) y.row(i) = standard_normal(m, rng).transpose();
  const auto theta = posterior_cluster_means(y, Grid::equispaced(m), Labels(10, 0), iid_structure(m),
                                             iid_hyper(0.1, 1e6));
  ASSERT_EQ(theta.size(), 1u);
  const Vector avg = y.colwise().mean().transpose();
  EXPECT_LT((theta[0] - avg).cwiseAbs().maxCoeff(), 1e-3);
}

TEST(ClusterMeans, ZeroDataGivesZero) {
  const Matrix y = Matrix::Zero(4, 5);
  const auto theta = posterior_cluster_means(y, Grid::equispaced(5), Labels{0, 1, 0, 1}, iid_structure(5),
                                             iid_hyper(0.5, 2.0));
  ASSERT_EQ(theta.size(), 2u);
  for (const auto& t : theta) EXPECT_EQ(t.cwiseAbs().maxCoeff(), 0.0);
}

TEST(ClusterMeans, TwoIdenticalCurvesClosedForm) {
  const std::size_t m = 5;
  const Grid g = Grid::equispaced(m);
  const Vector a = Vector::LinSpaced(m, -1, 1), b = Vector::LinSpaced(m, 2, 0);
  Matrix y(4, m);
  y.row(0) = a.transpose();
  y.row(1) = b.transpose();
  y.row(2) = a.transpose();
  y.row(3) = b.transpose();
  const PointHyperparameters h = iid_hyper(0.3, 1.5);
  const auto theta = posterior_cluster_means(y, g, Labels{0, 1, 0, 1}, iid_structure(m), h);
  // m_k = C_θ (C_θ + C_y / 2)⁻¹ y with C_y = 0.3 I.
  const Matrix ct = h.tau_mu2 * build_covariance(h.mean_kernel, g);
  const Matrix s = ct + 0.15 * Matrix::Identity(m, m);
  EXPECT_LT((theta[0] - ct * s.llt().solve(a)).norm(), 1e-9);
  EXPECT_LT((theta[1] - ct * s.llt().solve(b)).norm(), 1e-9);
  EXPECT_LT(theta[0].norm(), a.norm());
}

TEST(Hyperparameters, PosteriorMeansAndMode) {
  ChainTrace trace;
  SamplerConfig c;
  c.error_kind = ErrorKind::DenseGP;
  trace.model = ModelStructure::from_config(c, 8);
  const double nus[] = {0.5, 1.5, 0.5, 2.5};
  for (int k = 0; k < 4; ++k) {
    TraceDraw d;
    d.partition = make_partition({0, 0});
    d.tau_y2 = 1.0 + k;
    d.tau_mu2 = 2.0 * (k + 1);
    d.nu = nus[k];
    d.ell_y = 0.1 * (k + 1);
    d.ell_mu = 0.2;
    trace.draws.push_back(d);
  }
  const PointHyperparameters h = posterior_hyperparameters(trace);
  EXPECT_DOUBLE_EQ(h.tau_y2, 2.5);
  EXPECT_DOUBLE_EQ(h.tau_mu2, 5.0);
  EXPECT_EQ(h.error_kernel.family, KernelFamily::MaternHalf);
  EXPECT_NEAR(h.error_kernel.length, 0.25, 1e-15);
  EXPECT_NEAR(h.mean_kernel.length, 0.2, 1e-15);
}
