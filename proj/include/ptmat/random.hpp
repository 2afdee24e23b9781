#pragma once

#include <cstdint>
#include <random>

namespace ptmat {

/// Reproducible generator used for every random draw in the library.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. Doubles are built from the top 53 bits of each 64-bit word
/// rather than through std::uniform_real_distribution, whose algorithm is
/// implementation defined. Identical seeds therefore give identical draws on
/// every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1).
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ptmat
