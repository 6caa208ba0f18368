#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace rgd {

/// Independent substreams drawn from one user-facing seed.
enum class Stream : std::uint64_t {
  matrix = 1,
  left_basis,
  right_basis,
  spectrum,
  solution,
  noise,
  solver,
};

/// Seedable generator: a 64-bit Mersenne Twister keyed by (seed, stream)
/// through std::seed_seq. Identical (seed, stream) pairs give identical draws.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, Stream stream = Stream::solver, std::uint64_t index = 0) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(index),
                      static_cast<std::uint32_t>(index >> 32)};
    engine_.seed(seq);
  }

  double normal() { return normal_(engine_); }

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }

  std::size_t uniform_index(std::size_t count) {
    return std::uniform_int_distribution<std::size_t>(0, count - 1)(engine_);
  }

  /// Index i drawn with probability weights[i] / Σ weights.
  std::size_t discrete(std::span<const double> weights) {
    std::discrete_distribution<std::size_t> dist(weights.begin(), weights.end());
    return dist(engine_);
  }

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace rgd
