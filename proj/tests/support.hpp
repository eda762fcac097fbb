#pragma once

// Seeded generators shared by the unit and acceptance suites.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "ptolemy_lab/metric_space.hpp"
#include "ptolemy_lab/random.hpp"

namespace ptolemy_lab::testing {

/// Integer distances drawn from [10, 14]. Any such matrix is a metric (14 <= 10 + 10) and is
/// Ptolemy: each product lies in [100, 196] while any two products sum to >= 200.
inline MetricSpace<Rational> random_band_space(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Rational> d(n * n, Rational(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d[i * n + j] = d[j * n + i] = Rational(10 + static_cast<long>(rng.below(5)));
  return {indexed_labels(n), std::move(d)};
}

/// Distinct rational points of the real line; Ptolemy with many equality cases.
inline MetricSpace<Rational> random_line_space(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Rational> x;
  while (x.size() < n) {
    Rational v(static_cast<long>(rng.below(200)) - 100, static_cast<long>(1 + rng.below(7)));
    v.canonicalize();
    if (std::find(x.begin(), x.end(), v) == x.end()) x.push_back(v);
  }
  std::vector<Rational> d(n * n, Rational(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d[i * n + j] = abs(x[i] - x[j]);
  return {indexed_labels(n), std::move(d)};
}

/// Integer distances from [2, 4]: always a metric (4 <= 2 + 2), often not Ptolemy (4*4 > 2*2 + 2*2).
inline MetricSpace<Rational> random_small_metric(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Rational> d(n * n, Rational(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d[i * n + j] = d[j * n + i] = Rational(2 + static_cast<long>(rng.below(3)));
  return {indexed_labels(n), std::move(d)};
}

}  // namespace ptolemy_lab::testing
