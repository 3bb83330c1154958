#include "fclust/rng.hpp"

#include <boost/random/gamma_distribution.hpp>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_01.hpp>
#include <boost/random/uniform_int_distribution.hpp>

#include <cmath>
#include <numeric>

#include "fclust/error.hpp"

namespace fclust {
namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

Philox4x32::Block Philox4x32::block(const Block& counter, std::array<std::uint32_t, 2> key) {
  Block c = counter;
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, c[0], hi0, lo0);
    mulhilo(kMul1, c[2], hi1, lo1);
    c = {hi1 ^ c[1] ^ key[0], lo1, hi0 ^ c[3] ^ key[1], lo0};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return c;
}

Philox4x32::Philox4x32(std::uint64_t key, std::uint64_t stream) {
  key_ = {static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)};
  counter_ = {0, 0, static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
}

Philox4x32::result_type Philox4x32::operator()() {
  if (next_ == 4) {
    buffer_ = block(counter_, key_);
    // 64-bit block index in the low two words; the stream id stays in the high words.
    if (++counter_[0] == 0) ++counter_[1];
    next_ = 0;
  }
  return buffer_[next_++];
}

std::uint64_t mix_seed(std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = 0x6A09E667F3BCC909ull;
  for (std::uint64_t p : parts) h = splitmix64(h ^ splitmix64(p));
  return h;
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream), engine_(seed, stream) {}

RngStream RngStream::split(std::uint64_t child) const {
  return RngStream(mix_seed({seed_, stream_, child}), 0);
}

double RngStream::uniform() {
  // 53 random bits, shifted off zero.
  for (;;) {
    const std::uint64_t hi = engine_();
    const std::uint64_t lo = engine_();
    const std::uint64_t bits = ((hi << 32) | lo) >> 11;
    if (bits != 0) return static_cast<double>(bits) * 0x1.0p-53;
  }
}

double RngStream::normal() {
  boost::random::normal_distribution<double> dist(0.0, 1.0);
  return dist(engine_);
}

double RngStream::gamma(double shape) {
  if (!(shape > 0.0)) throw ParameterError("gamma shape must be positive");
  boost::random::gamma_distribution<double> dist(shape, 1.0);
  return dist(engine_);
}

double RngStream::inverse_gamma(double shape, double scale) {
  if (!(scale > 0.0)) throw ParameterError("inverse-gamma scale must be positive");
  return scale / gamma(shape);
}

std::size_t RngStream::uniform_index(std::size_t n) {
  if (n == 0) throw ParameterError("uniform_index over an empty range");
  boost::random::uniform_int_distribution<std::uint64_t> dist(0, n - 1);
  return static_cast<std::size_t>(dist(engine_));
}

std::size_t RngStream::categorical(std::span<const double> weights) {
  if (weights.empty()) throw ParameterError("categorical over no outcomes");
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(total > 0.0) || !std::isfinite(total)) throw ParameterError("categorical weights must have a positive finite sum");
  const double u = uniform() * total;
  double acc = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    acc += weights[k];
    if (u < acc) return k;
  }
  // Roundoff in the running sum: fall back to the last positive weight.
  for (std::size_t k = weights.size(); k-- > 0;)
    if (weights[k] > 0.0) return k;
  return weights.size() - 1;
}

}  // namespace fclust
