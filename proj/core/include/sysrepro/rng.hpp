#pragma once

#include <cstdint>
#include <random>

namespace sysrepro {

/// Uniform integer in [0, n) by rejection, so the stream of values is the
/// same on every standard library (std::uniform_int_distribution is not).
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  if (n <= 1) return 0;
  const std::uint64_t limit = std::mt19937_64::max() - (std::mt19937_64::max() % n + 1) % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x > limit);
  return x % n;
}

}  // namespace sysrepro
