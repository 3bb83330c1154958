#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <span>

namespace fclust {

/// Philox4x32-10 counter-based bit generator (Salmon et al., SC'11).
///
/// The 64-bit key selects the stream, the 128-bit counter the position in it.
/// Output is a pure function of (key, counter), so draws are reproducible on
/// any platform and independent streams need no shared state.
class Philox4x32 {
 public:
  using result_type = std::uint32_t;
  using Block = std::array<std::uint32_t, 4>;

  explicit Philox4x32(std::uint64_t key = 0, std::uint64_t stream = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// One raw Philox block for an explicit counter and key.
  static Block block(const Block& counter, std::array<std::uint32_t, 2> key);

 private:
  std::array<std::uint32_t, 2> key_{};
  Block counter_{};
  Block buffer_{};
  int next_ = 4;
};

/// SplitMix64 finalizer folded over the inputs; used to derive child seeds.
std::uint64_t mix_seed(std::initializer_list<std::uint64_t> parts);

/// A seeded random stream with the handful of distributions the sampler needs.
/// Not thread-safe; each chain owns its own stream.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

  /// Independent child stream; same (seed, stream, child) always gives the same child.
  RngStream split(std::uint64_t child) const;

  /// Uniform on the open interval (0, 1).
  double uniform();
  double normal();
  /// Gamma with the given shape and unit scale.
  double gamma(double shape);
  /// Inverse-gamma IG(shape, scale): density ∝ x^{-shape-1} exp(-scale/x).
  double inverse_gamma(double shape, double scale);
  /// Uniform integer in [0, n).
  std::size_t uniform_index(std::size_t n);
  /// Draw an index with the given (normalized or not) non-negative weights.
  std::size_t categorical(std::span<const double> weights);

  Philox4x32& engine() noexcept { return engine_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  Philox4x32 engine_;
};

}  // namespace fclust
