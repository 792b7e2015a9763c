#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace ccpp {

/// Seedable 64-bit generator with a fixed, documented algorithm.
///
/// Bits come from std::mt19937_64, whose output sequence is pinned by the
/// C++ standard. Real and integer draws are derived here instead of through
/// the <random> distributions, whose algorithms are implementation-defined,
/// so a seed replays identically across compilers and platforms.
class Rng {
 public:
  static constexpr std::string_view algorithm = "mt19937_64/u53";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01();

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi);

  /// Unbiased integer in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  /// Standard normal via the Box-Muller transform.
  double normal();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace ccpp
