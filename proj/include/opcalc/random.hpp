#pragma once

#include <cstdint>
#include <random>

#include "opcalc/matrix.hpp"

namespace opcalc {

/// Seeded source of test matrices. The mapping from engine output to
/// doubles is explicit so sequences do not depend on the standard
/// library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [-1, 1).
  double symmetric() { return 2.0 * unit() - 1.0; }
  /// Uniform on [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  /// Entries uniform in the unit square of the complex plane (or real),
  /// rescaled so norm_1 equals `target_norm`.
  ComplexMatrix matrix(std::size_t n, double target_norm, bool complex_entries = true);

 private:
  std::mt19937_64 engine_;
};

}  // namespace opcalc
