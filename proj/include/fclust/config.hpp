#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "fclust/sampler.hpp"
#include "fclust/simgen.hpp"
#include "fclust/theory.hpp"

namespace fclust {

/// The five fitted procedures of the simulation study.
enum class Method { DP_IID, PY_IID, DP_GP, PY_GP, Band };

/// "DP+IID", "PY+IID", "DP+GP", "PY+GP", "band".
std::string_view to_string(Method method);
Method parse_method(std::string_view name);
const std::vector<Method>& all_methods();

struct ExperimentConfig {
  std::string preset = "default";
  std::vector<std::size_t> ms{8, 16, 32, 64};
  std::vector<NoiseDesign> designs = all_noise_designs();
  std::vector<Method> methods = all_methods();
  std::size_t replicates = 50;
  std::size_t n = 80;
  std::size_t k_true = 2;
  double sigma2 = 0.05;
  double alpha = 1.0;
  double delta = 0.1;
  std::size_t iterations = 5000;
  std::size_t burn_in = 2000;
  double rw_step = 0.3;
  double bandwidth_multiplier = 3.0;
  MeanBanding mean_banding = MeanBanding::Dense;
  NewClusterMean new_cluster_mean = NewClusterMean::Prior;
  std::uint64_t seed = 1;
  bool write_traces = true;
  /// When false, wall_seconds is written as 0 so results depend on the seed only.
  bool report_wall_clock = true;
  TheoryConfig theory;

  void validate() const;
};

/// Named presets: "default", "supp-noise", "supp-py", "smoke".
ExperimentConfig preset_config(std::string_view name);

/// Flat `key = value` lines; `#` starts a comment. Duplicate keys are errors.
std::map<std::string, std::string> parse_key_values(std::istream& in);

/// Starts from the `preset` key (default "default") and applies every other
/// key. Unknown keys and malformed values throw ParameterError.
ExperimentConfig experiment_from_key_values(const std::map<std::string, std::string>& kv);
ExperimentConfig load_experiment_config(const std::string& path);

/// Sampler settings for one method under this experiment.
SamplerConfig sampler_config(const ExperimentConfig& cfg, Method method, std::uint64_t seed);

/// Seed of a simulated dataset; independent of the method.
std::uint64_t dataset_seed(const ExperimentConfig& cfg, NoiseDesign design, std::size_t m, std::size_t replicate);
/// Seed of one chain on one dataset.
std::uint64_t chain_seed(std::uint64_t dataset_seed, Method method);

SimDesign sim_design(const ExperimentConfig& cfg, NoiseDesign design, std::size_t m, std::size_t replicate);

}  // namespace fclust
