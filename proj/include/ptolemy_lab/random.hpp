#pragma once

#include <cstdint>
#include <random>
#include <unordered_map>
#include <vector>

namespace ptolemy_lab {

/// Seeded generator with platform-independent draws (std distributions are
/// implementation-defined, so bounded integers and reals are derived by hand).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound) by rejection.
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v;
    do v = engine_();
    while (v >= limit);
    return v % bound;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

 private:
  std::mt19937_64 engine_;
};

/// First `count` entries of a seeded uniform permutation of [0, total), without
/// materializing the whole range (sparse Fisher-Yates).
inline std::vector<std::uint64_t> sample_without_replacement(std::uint64_t total, std::uint64_t count,
                                                             std::uint64_t seed) {
  if (count > total) count = total;
  Rng rng(seed);
  std::unordered_map<std::uint64_t, std::uint64_t> swapped;
  auto value_at = [&](std::uint64_t i) {
    auto it = swapped.find(i);
    return it == swapped.end() ? i : it->second;
  };
  std::vector<std::uint64_t> out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    std::uint64_t j = i + rng.below(total - i);
    std::uint64_t vi = value_at(i), vj = value_at(j);
    swapped[j] = vi;
    swapped[i] = vj;
    out.push_back(vj);
  }
  return out;
}

}  // namespace ptolemy_lab
