#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "fclust/blinalg.hpp"
#include "fclust/kernels.hpp"
#include "fclust/partition.hpp"
#include "fclust/rng.hpp"

namespace fclust {

/// Noise covariance families of the simulation study.
enum class NoiseDesign { IID, Exp01, Exp10, FBM025, FBM05 };

/// "iid", "exp0.1", "exp1.0", "fbm0.25", "fbm0.5".
std::string_view to_string(NoiseDesign design);
NoiseDesign parse_noise_design(std::string_view name);
const std::vector<NoiseDesign>& all_noise_designs();
/// Noise kernel with variance sigma2.
KernelSpec noise_kernel(NoiseDesign design, double sigma2);

struct SimDesign {
  std::size_t n = 80;
  std::size_t m = 8;
  std::size_t k_true = 2;
  KernelSpec mean_kernel{KernelFamily::GaussianSE, 1.0, 0.15, 0.5};
  NoiseDesign noise = NoiseDesign::IID;
  double sigma2 = 0.05;
  std::uint64_t seed = 0;

  void validate() const;
};

struct FunctionalDataset {
  Grid grid = Grid::equispaced(2);
  Matrix y;  // n × m, one curve per row
  Labels z_true;
  std::vector<Vector> theta_true;
  SimDesign design;
};

/// Balanced labels: consecutive blocks of n / k items.
Labels balanced_labels(std::size_t n, std::size_t k);

/// θ_1..θ_k ~ N(0, C_θ) first, then y_i = θ_{z_i} + ε_i in item order, on
/// the grid x_j = j / m.
FunctionalDataset generate(const SimDesign& design, RngStream& rng);

void write_dataset(std::ostream& out, const FunctionalDataset& data);
FunctionalDataset read_dataset(std::istream& in);
void write_dataset_file(const std::string& path, const FunctionalDataset& data);
FunctionalDataset read_dataset_file(const std::string& path);

}  // namespace fclust
