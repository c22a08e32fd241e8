#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace rht {

/// Seeded random stream. Uniform doubles are derived from the raw 64-bit engine
/// output so sequences do not depend on the standard library's distributions.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  /// Independent stream for a named purpose, e.g. ("trials", point_index).
  static RandomStream derive(std::uint64_t root, std::string_view name, std::uint64_t index = 0);

  std::uint64_t next_u64() { return engine_(); }
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) { return uniform() < p; }
  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace rht
