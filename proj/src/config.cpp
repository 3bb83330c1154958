#include "fclust/config.hpp"

#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>

#include "fclust/error.hpp"

namespace fclust {
namespace {

std::string trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return std::string(s.substr(begin, end - begin + 1));
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::istringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  if (out.empty()) throw ParameterError("empty list");
  return out;
}

double to_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used == value.size()) return v;
  } catch (const std::exception&) {
  }
  throw ParameterError("key '" + key + "': expected a number, got '" + value + "'");
}

std::uint64_t to_unsigned(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    if (!value.empty() && value[0] != '-') {
      const unsigned long long v = std::stoull(value, &used);
      if (used == value.size()) return v;
    }
  } catch (const std::exception&) {
  }
  throw ParameterError("key '" + key + "': expected a non-negative integer, got '" + value + "'");
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ParameterError("key '" + key + "': expected true or false, got '" + value + "'");
}

std::vector<std::size_t> to_size_list(const std::string& key, const std::string& value) {
  std::vector<std::size_t> out;
  for (const std::string& item : split_list(value)) out.push_back(to_unsigned(key, item));
  return out;
}

}  // namespace

std::string_view to_string(Method method) {
  switch (method) {
    case Method::DP_IID: return "DP+IID";
    case Method::PY_IID: return "PY+IID";
    case Method::DP_GP: return "DP+GP";
    case Method::PY_GP: return "PY+GP";
    case Method::Band: return "band";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  for (Method m : all_methods())
    if (to_string(m) == name) return m;
  throw ParameterError("unknown method '" + std::string(name) + "'");
}

const std::vector<Method>& all_methods() {
  static const std::vector<Method> methods{Method::DP_IID, Method::PY_IID, Method::DP_GP, Method::PY_GP, Method::Band};
  return methods;
}

void ExperimentConfig::validate() const {
  if (replicates < 1) throw ParameterError("replicates must be at least 1");
  if (methods.empty()) throw ParameterError("method list is empty");
  if (designs.empty()) throw ParameterError("design list is empty");
  if (ms.empty()) throw ParameterError("m list is empty");
  for (std::size_t m : ms)
    if (m < 2) throw ParameterError("grid sizes must be at least 2");
  if (!(iterations > burn_in)) throw ParameterError("iterations must exceed burn_in");
  if (k_true == 0 || n % k_true != 0) throw ParameterError("n must be a multiple of k_true");
  if (!(sigma2 > 0.0)) throw ParameterError("sigma2 must be positive");
  for (Method m : methods) sampler_config(*this, m, 0).validate();
}

ExperimentConfig preset_config(std::string_view name) {
  ExperimentConfig cfg;
  cfg.preset = std::string(name);
  if (name == "default") return cfg;
  if (name == "supp-noise") {
    cfg.sigma2 = 0.1;
    return cfg;
  }
  if (name == "supp-py") {
    cfg.alpha = 1.5;
    cfg.delta = 0.2;
    return cfg;
  }
  if (name == "smoke") {
    cfg.ms = {8};
    cfg.designs = {NoiseDesign::IID};
    cfg.replicates = 1;
    cfg.iterations = 150;
    cfg.burn_in = 50;
    cfg.theory.replicates = 20;
    cfg.theory.ratio_ms = {8, 16};
    return cfg;
  }
  throw ParameterError("unknown preset '" + std::string(name) + "'");
}

std::map<std::string, std::string> parse_key_values(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw ParameterError("line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (key.empty()) throw ParameterError("line " + std::to_string(lineno) + ": empty key");
    if (!kv.emplace(key, value).second) throw ParameterError("duplicate key '" + key + "'");
  }
  return kv;
}

ExperimentConfig experiment_from_key_values(const std::map<std::string, std::string>& kv) {
  const auto preset = kv.find("preset");
  ExperimentConfig cfg = preset_config(preset == kv.end() ? "default" : preset->second);
  for (const auto& [key, value] : kv) {
    if (key == "preset") continue;
    if (key == "study.m") cfg.ms = to_size_list(key, value);
    else if (key == "study.designs") {
      cfg.designs.clear();
      for (const std::string& d : split_list(value)) cfg.designs.push_back(parse_noise_design(d));
    } else if (key == "study.methods") {
      cfg.methods.clear();
      for (const std::string& d : split_list(value)) cfg.methods.push_back(parse_method(d));
    } else if (key == "study.replicates") cfg.replicates = to_unsigned(key, value);
    else if (key == "study.n") cfg.n = to_unsigned(key, value);
    else if (key == "study.k_true") cfg.k_true = to_unsigned(key, value);
    else if (key == "study.sigma2") cfg.sigma2 = to_double(key, value);
    else if (key == "prior.alpha") cfg.alpha = to_double(key, value);
    else if (key == "prior.delta") cfg.delta = to_double(key, value);
    else if (key == "sampler.iterations") cfg.iterations = to_unsigned(key, value);
    else if (key == "sampler.burn_in") cfg.burn_in = to_unsigned(key, value);
    else if (key == "sampler.rw_step") cfg.rw_step = to_double(key, value);
    else if (key == "error_model.bandwidth_multiplier") cfg.bandwidth_multiplier = to_double(key, value);
    else if (key == "error_model.mean_banding") cfg.mean_banding = parse_mean_banding(value);
    else if (key == "sampler.new_cluster_mean") cfg.new_cluster_mean = parse_new_cluster_mean(value);
    else if (key == "seed") cfg.seed = to_unsigned(key, value);
    else if (key == "report.traces") cfg.write_traces = to_bool(key, value);
    else if (key == "report.wall_clock") cfg.report_wall_clock = to_bool(key, value);
    else if (key == "theory.replicates") cfg.theory.replicates = to_unsigned(key, value);
    else if (key == "theory.ratio_m") cfg.theory.ratio_ms = to_size_list(key, value);
    else if (key == "theory.sigma2") cfg.theory.sigma2 = to_double(key, value);
    else if (key == "theory.growth_m") cfg.theory.growth_ms = to_size_list(key, value);
    else if (key == "theory.gap_m") cfg.theory.gap_m = to_unsigned(key, value);
    else if (key == "theory.gap_r") cfg.theory.gap_bandwidths = to_size_list(key, value);
    else throw ParameterError("unknown config key '" + key + "'");
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open config '" + path + "'");
  return experiment_from_key_values(parse_key_values(in));
}

SamplerConfig sampler_config(const ExperimentConfig& cfg, Method method, std::uint64_t seed) {
  SamplerConfig s;
  const bool py = method == Method::PY_IID || method == Method::PY_GP;
  s.prior = py ? PartitionPrior::py(cfg.alpha, cfg.delta) : PartitionPrior::dp(cfg.alpha);
  switch (method) {
    case Method::DP_IID:
    case Method::PY_IID: s.error_kind = ErrorKind::IID; break;
    case Method::DP_GP:
    case Method::PY_GP: s.error_kind = ErrorKind::DenseGP; break;
    case Method::Band: s.error_kind = ErrorKind::BandedGP; break;
  }
  s.bandwidth_multiplier = cfg.bandwidth_multiplier;
  s.iterations = cfg.iterations;
  s.burn_in = cfg.burn_in;
  s.hyper.rw_step = cfg.rw_step;
  s.mean_banding = cfg.mean_banding;
  s.new_cluster_mean = cfg.new_cluster_mean;
  s.seed = seed;
  return s;
}

std::uint64_t dataset_seed(const ExperimentConfig& cfg, NoiseDesign design, std::size_t m, std::size_t replicate) {
  return mix_seed({cfg.seed, static_cast<std::uint64_t>(design), m, replicate, static_cast<std::uint64_t>(cfg.n)});
}

std::uint64_t chain_seed(std::uint64_t dataset_seed, Method method) {
  return mix_seed({dataset_seed, 0x6d657468u, static_cast<std::uint64_t>(method)});
}

SimDesign sim_design(const ExperimentConfig& cfg, NoiseDesign design, std::size_t m, std::size_t replicate) {
  SimDesign d;
  d.n = cfg.n;
  d.m = m;
  d.k_true = cfg.k_true;
  d.noise = design;
  d.sigma2 = cfg.sigma2;
  d.seed = dataset_seed(cfg, design, m, replicate);
  return d;
}

}  // namespace fclust
