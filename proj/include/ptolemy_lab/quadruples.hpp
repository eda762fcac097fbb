#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <limits>
#include <stdexcept>

namespace ptolemy_lab {

/// C(n, k) without intermediate overflow for the sizes used here.
constexpr std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Four distinct point indices, sorted ascending.
struct Quadruple {
  std::array<std::size_t, 4> idx{};

  std::size_t operator[](std::size_t p) const { return idx[p]; }
  auto operator<=>(const Quadruple&) const = default;
};

/// Lexicographic rank of `q` among the C(n, 4) canonical quadruples over n points.
inline std::uint64_t rank_quadruple(std::size_t n, const Quadruple& q) {
  std::uint64_t r = 0;
  std::size_t prev = 0;
  for (std::size_t p = 0; p < 4; ++p) {
    for (std::size_t v = (p == 0 ? 0 : prev + 1); v < q.idx[p]; ++v) r += binomial(n - 1 - v, 3 - p);
    prev = q.idx[p];
  }
  return r;
}

/// Inverse of rank_quadruple.
inline Quadruple unrank_quadruple(std::size_t n, std::uint64_t rank) {
  if (rank >= binomial(n, 4)) throw std::out_of_range("quadruple rank out of range");
  Quadruple q;
  std::size_t v = 0;
  for (std::size_t p = 0; p < 4; ++p) {
    for (;; ++v) {
      std::uint64_t block = binomial(n - 1 - v, 3 - p);
      if (rank < block) break;
      rank -= block;
    }
    q.idx[p] = v++;
  }
  return q;
}

/// Advances to the lexicographic successor; returns false past the last quadruple.
inline bool next_quadruple(std::size_t n, Quadruple& q) {
  for (std::size_t p = 4; p-- > 0;) {
    if (q.idx[p] < n - 4 + p) {
      ++q.idx[p];
      for (std::size_t r = p + 1; r < 4; ++r) q.idx[r] = q.idx[r - 1] + 1;
      return true;
    }
  }
  return false;
}

/// Lexicographic stream of canonical quadruples with ranks in [first, last).
class QuadrupleRange {
 public:
  class iterator {
   public:
    using value_type = Quadruple;
    using difference_type = std::ptrdiff_t;
    using reference = const Quadruple&;
    using iterator_category = std::input_iterator_tag;

    iterator() = default;
    iterator(std::size_t n, std::uint64_t rank, std::uint64_t last)
        : n_(n), rank_(rank) {
      if (rank < last) q_ = unrank_quadruple(n, rank);
    }
    reference operator*() const { return q_; }
    const Quadruple* operator->() const { return &q_; }
    iterator& operator++() {
      ++rank_;
      next_quadruple(n_, q_);
      return *this;
    }
    void operator++(int) { ++*this; }
    bool operator==(const iterator& o) const { return rank_ == o.rank_; }
    std::uint64_t rank() const { return rank_; }

   private:
    std::size_t n_ = 0;
    std::uint64_t rank_ = 0;
    Quadruple q_{};
  };

  explicit QuadrupleRange(std::size_t n)
      : n_(n), first_(0), last_(n < 4 ? 0 : binomial(n, 4)) {}
  QuadrupleRange(std::size_t n, std::uint64_t first, std::uint64_t last)
      : n_(n), first_(first), last_(last) {
    std::uint64_t total = n < 4 ? 0 : binomial(n, 4);
    if (first_ > last_ || last_ > total) throw std::out_of_range("quadruple slice out of range");
  }

  iterator begin() const { return {n_, first_, last_}; }
  iterator end() const { return {n_, last_, last_}; }
  std::uint64_t size() const { return last_ - first_; }
  bool empty() const { return first_ == last_; }

  /// Sub-range by rank, for data-parallel consumption.
  QuadrupleRange slice(std::uint64_t first, std::uint64_t last) const {
    return {n_, first_ + first, first_ + last};
  }

 private:
  std::size_t n_;
  std::uint64_t first_;
  std::uint64_t last_;
};

/// All C(n, 4) canonical quadruples in lexicographic order; empty for n < 4.
inline QuadrupleRange enumerate_quadruples(std::size_t n) { return QuadrupleRange(n); }

}  // namespace ptolemy_lab
