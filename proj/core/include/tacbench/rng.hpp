#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>

namespace tacbench {

/// Seeded generator with fixed distribution formulas. The standard
/// distributions are implementation-defined, which would make simulator output
/// differ between standard libraries; mt19937_64's raw sequence is not.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  void reseed(std::uint64_t seed) {
    engine_.seed(seed);
    cached_normal_.reset();
  }

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n) without modulo bias. n must be > 0.
  std::uint64_t below(std::uint64_t n);

  /// Standard normal via the Box-Muller transform.
  double normal();

 private:
  std::mt19937_64 engine_;
  std::optional<double> cached_normal_;
};

/// Derives an independent stream seed for a named pipeline stage:
/// splitmix64(seed XOR fnv1a64(stage)).
std::uint64_t derive_seed(std::uint64_t seed, std::string_view stage) noexcept;

}  // namespace tacbench
