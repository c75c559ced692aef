#pragma once

#include <cstdint>
#include <limits>

namespace stv {

// splitmix64 (Steele/Lea/Flood). Used everywhere a reproducible stream is
// needed; <random> distributions are not portable across standard libraries.
struct SplitMix64 {
  std::uint64_t state = 0;

  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform draw from [0, k), rejection-sampled so every k divides evenly.
  int pick(int k) {
    if (k <= 1) return 0;
    const auto kk = static_cast<std::uint64_t>(k);
    const std::uint64_t rem = (std::numeric_limits<std::uint64_t>::max() % kk + 1) % kk;
    for (;;) {
      const std::uint64_t u = next();
      if (rem == 0 || u <= std::numeric_limits<std::uint64_t>::max() - rem) {
        return static_cast<int>(u % kk);
      }
    }
  }

  long long pick_count(long long lo, long long hi) {  // inclusive range
    if (hi <= lo) return lo;
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    const std::uint64_t rem = (std::numeric_limits<std::uint64_t>::max() % span + 1) % span;
    for (;;) {
      const std::uint64_t u = next();
      if (rem == 0 || u <= std::numeric_limits<std::uint64_t>::max() - rem) {
        return lo + static_cast<long long>(u % span);
      }
    }
  }
};

}  // namespace stv
