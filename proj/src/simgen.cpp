#include "fclust/simgen.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "fclust/error.hpp"
#include "fclust/gauss.hpp"

namespace fclust {
namespace {

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream ss(line);
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw ParameterError("malformed number '" + s + "'");
  return v;
}

std::size_t parse_size(const std::string& s) {
  std::size_t used = 0;
  const unsigned long long v = std::stoull(s, &used);
  if (used != s.size()) throw ParameterError("malformed integer '" + s + "'");
  return static_cast<std::size_t>(v);
}

}  // namespace

std::string_view to_string(NoiseDesign design) {
  switch (design) {
    case NoiseDesign::IID: return "iid";
    case NoiseDesign::Exp01: return "exp0.1";
    case NoiseDesign::Exp10: return "exp1.0";
    case NoiseDesign::FBM025: return "fbm0.25";
    case NoiseDesign::FBM05: return "fbm0.5";
  }
  return "unknown";
}

NoiseDesign parse_noise_design(std::string_view name) {
  for (NoiseDesign d : all_noise_designs())
    if (to_string(d) == name) return d;
  throw ParameterError("unknown noise design '" + std::string(name) + "'");
}

const std::vector<NoiseDesign>& all_noise_designs() {
  static const std::vector<NoiseDesign> designs{NoiseDesign::IID, NoiseDesign::Exp01, NoiseDesign::Exp10,
                                                NoiseDesign::FBM025, NoiseDesign::FBM05};
  return designs;
}

KernelSpec noise_kernel(NoiseDesign design, double sigma2) {
  switch (design) {
    case NoiseDesign::IID: return {KernelFamily::IID, sigma2, 1.0, 0.5};
    case NoiseDesign::Exp01: return {KernelFamily::MaternHalf, sigma2, 0.1, 0.5};
    case NoiseDesign::Exp10: return {KernelFamily::MaternHalf, sigma2, 1.0, 0.5};
    case NoiseDesign::FBM025: return {KernelFamily::FBM, sigma2, 1.0, 0.25};
    case NoiseDesign::FBM05: return {KernelFamily::FBM, sigma2, 1.0, 0.5};
  }
  throw ParameterError("unknown noise design");
}

void SimDesign::validate() const {
  if (k_true == 0 || n == 0 || n % k_true != 0) throw ParameterError("n must be a positive multiple of k_true");
  if (m < 2) throw ParameterError("grid needs at least two points");
  if (!(sigma2 > 0.0)) throw ParameterError("noise variance must be positive");
  mean_kernel.validate();
}

Labels balanced_labels(std::size_t n, std::size_t k) {
  if (k == 0 || n % k != 0) throw ParameterError("n must be a positive multiple of k");
  Labels z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = i / (n / k);
  return z;
}

FunctionalDataset generate(const SimDesign& design, RngStream& rng) {
  design.validate();
  FunctionalDataset data;
  data.design = design;
  data.grid = Grid::equispaced(design.m);
  const CholeskyFactor mean_factor = dense_cholesky(build_covariance(design.mean_kernel, data.grid));
  const CholeskyFactor noise_factor =
      dense_cholesky(build_covariance(noise_kernel(design.noise, design.sigma2), data.grid));
  const Vector zero = Vector::Zero(static_cast<Eigen::Index>(design.m));
  for (std::size_t k = 0; k < design.k_true; ++k) data.theta_true.push_back(sample(zero, mean_factor, rng));
  data.z_true = balanced_labels(design.n, design.k_true);
  data.y.resize(static_cast<Eigen::Index>(design.n), static_cast<Eigen::Index>(design.m));
  for (std::size_t i = 0; i < design.n; ++i)
    data.y.row(static_cast<Eigen::Index>(i)) = sample(data.theta_true[data.z_true[i]], noise_factor, rng).transpose();
  return data;
}

void write_dataset(std::ostream& out, const FunctionalDataset& data) {
  const SimDesign& d = data.design;
  out << "n=" << d.n << " m=" << d.m << " seed=" << d.seed << " design=" << to_string(d.noise)
      << " sigma2=" << format_double(d.sigma2) << " k_true=" << d.k_true << '\n';
  out << "grid";
  for (double x : data.grid.points()) out << ',' << format_double(x);
  out << '\n';
  for (std::size_t k = 0; k < data.theta_true.size(); ++k) {
    out << "theta," << k;
    for (Eigen::Index j = 0; j < data.theta_true[k].size(); ++j) out << ',' << format_double(data.theta_true[k](j));
    out << '\n';
  }
  for (Eigen::Index i = 0; i < data.y.rows(); ++i) {
    out << i << ',' << data.z_true[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < data.y.cols(); ++j) out << ',' << format_double(data.y(i, j));
    out << '\n';
  }
}

FunctionalDataset read_dataset(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParameterError("dataset is empty");
  std::map<std::string, std::string> header;
  {
    std::istringstream ss(line);
    std::string field;
    while (ss >> field) {
      const auto eq = field.find('=');
      if (eq == std::string::npos) throw ParameterError("malformed dataset header");
      header[field.substr(0, eq)] = field.substr(eq + 1);
    }
  }
  for (const char* key : {"n", "m", "seed", "design", "sigma2", "k_true"})
    if (!header.count(key)) throw ParameterError(std::string("dataset header lacks '") + key + "'");
  FunctionalDataset data;
  SimDesign& d = data.design;
  d.n = parse_size(header["n"]);
  d.m = parse_size(header["m"]);
  d.seed = parse_size(header["seed"]);
  d.noise = parse_noise_design(header["design"]);
  d.sigma2 = parse_double(header["sigma2"]);
  d.k_true = parse_size(header["k_true"]);

  auto read_row = [&](const char* what) {
    if (!std::getline(in, line)) throw ParameterError(std::string("dataset truncated before ") + what);
    return split(line, ',');
  };
  std::vector<std::string> row = read_row("grid");
  if (row.size() != d.m + 1 || row[0] != "grid") throw ParameterError("malformed grid row");
  std::vector<double> points;
  for (std::size_t j = 1; j < row.size(); ++j) points.push_back(parse_double(row[j]));
  data.grid = Grid(std::move(points));
  for (std::size_t k = 0; k < d.k_true; ++k) {
    row = read_row("theta");
    if (row.size() != d.m + 2 || row[0] != "theta" || parse_size(row[1]) != k) throw ParameterError("malformed theta row");
    Vector t(static_cast<Eigen::Index>(d.m));
    for (std::size_t j = 0; j < d.m; ++j) t(static_cast<Eigen::Index>(j)) = parse_double(row[j + 2]);
    data.theta_true.push_back(std::move(t));
  }
  data.y.resize(static_cast<Eigen::Index>(d.n), static_cast<Eigen::Index>(d.m));
  data.z_true.resize(d.n);
  for (std::size_t i = 0; i < d.n; ++i) {
    row = read_row("curves");
    if (row.size() != d.m + 2 || parse_size(row[0]) != i) throw ParameterError("malformed curve row");
    data.z_true[i] = parse_size(row[1]);
    if (data.z_true[i] >= d.k_true) throw ParameterError("curve label out of range");
    for (std::size_t j = 0; j < d.m; ++j)
      data.y(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = parse_double(row[j + 2]);
  }
  return data;
}

void write_dataset_file(const std::string& path, const FunctionalDataset& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_dataset(out, data);
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

FunctionalDataset read_dataset_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return read_dataset(in);
}

}  // namespace fclust
