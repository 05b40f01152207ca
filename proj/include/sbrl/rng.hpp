#pragma once

#include <cstdint>
#include <random>

namespace sbrl {

/// Stream identifiers used to derive independent generators from one run seed.
enum class RngStream : std::uint64_t {
  Environment = 1,
  Exploration = 2,
  PolicyInit = 3,
  NetworkInit = 4,
  Replay = 5,
};

/// Seeded 64-bit generator with distribution helpers that do not depend on the
/// standard library's implementation-defined distributions, so draws are
/// identical across toolchains.
class Rng {
 public:
  using result_type = std::mt19937_64::result_type;

  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  /// Generator for `stream` derived from `seed` via splitmix64.
  static Rng for_stream(std::uint64_t seed, RngStream stream);

  result_type operator()() { return engine_(); }
  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform01();
  /// Uniform in [lo, hi].
  double uniform(double lo, double hi);
  /// Uniform integer in [0, n); n must be positive.
  std::size_t uniform_index(std::size_t n);
  /// Standard normal via Box-Muller.
  double normal();

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace sbrl
