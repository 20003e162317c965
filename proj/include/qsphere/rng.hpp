#pragma once

// Seeded sampling shared by every randomized check. The generator is the
// 64-bit LCG  x <- 6364136223846793005 x + 1442695040888963407 (mod 2^64),
// seeded with x = seed; each draw is the new state. Integer and real draws
// below are defined on the raw 64-bit outputs so other ports can reproduce
// the same samples.

#include <cstdint>
#include <random>

#include "qsphere/error.hpp"

namespace qsphere {

using Lcg64 = std::linear_congruential_engine<std::uint64_t, 6364136223846793005ULL,
                                              1442695040888963407ULL, 0ULL>;

class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform-ish integer in [lo, hi]: lo + (draw >> 33) mod (hi - lo + 1).
  long uniform_int(long lo, long hi) {
    if (hi < lo) throw Error(ErrorCode::InvalidArgument, "empty sampling range");
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>((next() >> 33) % span);
  }

  /// Real in [0, 1): top 53 bits of a draw times 2^-53.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  Lcg64 engine_;
};

}  // namespace qsphere
