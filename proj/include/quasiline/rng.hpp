#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

namespace quasiline {

/// The single pseudo-random source used for every seeded computation:
/// std::mt19937_64 (its output sequence is fixed by the C++ standard) with
/// integer ranges drawn by rejection sampling, so a seed reproduces the same
/// values on every platform and standard library.
class SeededRng {
 public:
  static constexpr const char* kName = "mt19937_64";

  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [lo, hi].
  long long uniform(long long lo, long long hi) {
    if (lo > hi) throw std::invalid_argument("uniform: empty range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
    if (span == 0) return static_cast<long long>(next());  // full 64-bit range
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return static_cast<long long>(static_cast<std::uint64_t>(lo) + x % span);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace quasiline
