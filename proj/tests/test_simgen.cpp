#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "fclust/error.hpp"
#include "fclust/simgen.hpp"

using namespace fclust;

TEST(Designs, NamesRoundTrip) {
  for (NoiseDesign d : all_noise_designs()) EXPECT_EQ(parse_noise_design(to_string(d)), d);
  EXPECT_EQ(all_noise_designs().size(), 5u);
  EXPECT_THROW(parse_noise_design("exp2"), ParameterError);
}

TEST(Designs, NoiseKernels) {
  EXPECT_EQ(noise_kernel(NoiseDesign::IID, 0.05).family, KernelFamily::IID);
  const KernelSpec e = noise_kernel(NoiseDesign::Exp01, 0.05);
  EXPECT_EQ(e.family, KernelFamily::MaternHalf);
  EXPECT_EQ(e.length, 0.1);
  EXPECT_EQ(e.scale, 0.05);
  EXPECT_EQ(noise_kernel(NoiseDesign::Exp10, 0.05).length, 1.0);
  EXPECT_EQ(noise_kernel(NoiseDesign::FBM025, 0.05).hurst, 0.25);
  EXPECT_EQ(noise_kernel(NoiseDesign::FBM05, 0.05).family, KernelFamily::FBM);
}

TEST(Generate, DefaultsAndBalance) {
  SimDesign d;
  d.seed = 3;
  RngStream rng(d.seed);
  const FunctionalDataset data = generate(d, rng);
  EXPECT_EQ(data.y.rows(), 80);
  EXPECT_EQ(data.y.cols(), 8);
  EXPECT_EQ(data.theta_true.size(), 2u);
  std::size_t ones = 0;
  for (auto z : data.z_true) ones += z;
  EXPECT_EQ(ones, 40u);
  EXPECT_DOUBLE_EQ(data.grid.points().front(), 1.0 / 8);
  EXPECT_DOUBLE_EQ(data.grid.points().back(), 1.0);
}

TEST(Generate, RejectsUnbalanced) {
  SimDesign d;
  d.n = 81;
  EXPECT_THROW(d.validate(), ParameterError);
}

TEST(Generate, NoiselessLimit) {
  SimDesign d;
  d.sigma2 = 1e-12;
  d.m = 16;
  for (NoiseDesign noise : all_noise_designs()) {
    d.noise = noise;
    RngStream rng(1);
    const FunctionalDataset data = generate(d, rng);
    for (Eigen::Index i = 0; i < data.y.rows(); ++i)
      ASSERT_LT((data.y.row(i).transpose() - data.theta_true[data.z_true[i]]).cwiseAbs().maxCoeff(), 1e-5);
  }
}

TEST(Generate, IidNoiseVariance) {
  SimDesign d;
  d.m = 8;
  RngStream rng(9);
  const FunctionalDataset data = generate(d, rng);
  double ss = 0;
  for (Eigen::Index i = 0; i < data.y.rows(); ++i)
    ss += (data.y.row(i).transpose() - data.theta_true[data.z_true[i]]).squaredNorm();
  const double var = ss / static_cast<double>(data.y.size());
  EXPECT_NEAR(var, 0.05, 0.005);
}

TEST(Generate, SameSeedSameBits) {
  SimDesign d;
  d.noise = NoiseDesign::FBM025;
  d.m = 32;
  RngStream a(44), b(44), c(45);
  const FunctionalDataset x = generate(d, a), y = generate(d, b), z = generate(d, c);
  EXPECT_EQ(x.y, y.y);
  EXPECT_EQ(x.theta_true, y.theta_true);
  EXPECT_NE(x.y, z.y);
}

namespace {

// Sample covariance of y − θ over many single-curve datasets.
Matrix noise_covariance(NoiseDesign noise, std::size_t m, int reps) {
  SimDesign d;
  d.n = 2;
  d.m = m;
  d.noise = noise;
  RngStream rng(7);
  Matrix acc = Matrix::Zero(m, m);
  for (int r = 0; r < reps; ++r) {
    const FunctionalDataset data = generate(d, rng);
    for (Eigen::Index i = 0; i < 2; ++i) {
      const Vector e = data.y.row(i).transpose() - data.theta_true[data.z_true[i]];
      acc += e * e.transpose();
    }
  }
  return acc / (2.0 * reps);
}

}  // namespace

TEST(Generate, NoiseCovarianceMatchesDesign) {
  const std::size_t m = 8;
  for (NoiseDesign noise : {NoiseDesign::Exp01, NoiseDesign::Exp10, NoiseDesign::FBM025, NoiseDesign::FBM05}) {
    const Matrix truth = build_covariance(noise_kernel(noise, 0.05), Grid::equispaced(m));
    const Matrix emp = noise_covariance(noise, m, 10000);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        // 5% of the entry's natural scale √(C_ii C_jj).
        const double tol = 0.05 * std::sqrt(truth(i, i) * truth(j, j));
        EXPECT_NEAR(emp(i, j), truth(i, j), tol) << to_string(noise) << " " << i << "," << j;
      }
  }
}

TEST(Generate, BrownianVarianceGrowth) {
  const std::size_t m = 8;
  const Matrix emp = noise_covariance(NoiseDesign::FBM05, m, 10000);
  for (std::size_t j = 0; j < m; ++j) {
    const double x = static_cast<double>(j + 1) / m;
    EXPECT_NEAR(emp(j, j), 0.05 * x, 0.05 * 0.05 * x) << j;
  }
}

TEST(DatasetIo, RoundTrip) {
  SimDesign d;
  d.noise = NoiseDesign::Exp01;
  d.m = 5;
  d.n = 6;
  d.seed = 12;
  RngStream rng(12);
  const FunctionalDataset data = generate(d, rng);
  std::stringstream s;
  write_dataset(s, data);
  const FunctionalDataset back = read_dataset(s);
  EXPECT_EQ(back.y, data.y);
  EXPECT_EQ(back.z_true, data.z_true);
  EXPECT_EQ(back.theta_true, data.theta_true);
  EXPECT_EQ(back.grid.points(), data.grid.points());
  EXPECT_EQ(back.design.seed, 12u);
  EXPECT_EQ(back.design.noise, NoiseDesign::Exp01);
  std::stringstream bad("n=2 m=2\n");
  EXPECT_ANY_THROW(read_dataset(bad));
}
