#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ptolemy_lab/metric_space.hpp"
#include "ptolemy_lab/parallel.hpp"
#include "ptolemy_lab/ptolemy.hpp"

namespace ptolemy_lab {

inline constexpr std::size_t kDefaultLabelCap = 5000;

class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(std::uint64_t projected, std::size_t cap)
      : std::runtime_error("completion would have " + std::to_string(projected) + " labels, cap is " +
                           std::to_string(cap)),
        projected_(projected),
        cap_(cap) {}
  std::uint64_t projected() const { return projected_; }
  std::size_t cap() const { return cap_; }

 private:
  std::uint64_t projected_;
  std::size_t cap_;
};

/// Unordered pair {a, b} of point indices, stored with a <= b; {a, a} is the embedded copy of a.
struct PairLabel {
  std::size_t a = 0, b = 0;

  PairLabel() = default;
  PairLabel(std::size_t x, std::size_t y) : a(std::min(x, y)), b(std::max(x, y)) {}
  bool singleton() const { return a == b; }
  auto operator<=>(const PairLabel&) const = default;
};

/// Number of unordered pairs (with repetition) over n points.
constexpr std::uint64_t pair_count(std::uint64_t n) { return n * (n + 1) / 2; }

/// Position of {i, j} in the enumeration {0,0}, {0,1}, ..., {0,n-1}, {1,1}, ...
constexpr std::size_t pair_index(std::size_t n, PairLabel p) { return p.a * n - p.a * (p.a - 1) / 2 + (p.b - p.a); }

/// Canonical rendering "{u,v}" with the two child labels in lexicographic order.
inline std::string render_pair(const std::string& u, const std::string& v) {
  return u <= v ? "{" + u + "," + v + "}" : "{" + v + "," + u + "}";
}

/// Quarter-sum metric on pairs: 0 if the pairs coincide, else the mean of the four cross distances.
template <MetricScalar T>
T pair_distance(const MetricSpace<T>& base, PairLabel p, PairLabel q) {
  if (p.a >= base.size() || p.b >= base.size() || q.a >= base.size() || q.b >= base.size())
    throw SpaceError("pair label refers to a point outside the base space");
  if (p == q) return NumericTraits<T>::zero();
  return T((base(p.a, q.a) + base(p.a, q.b) + base(p.b, q.a) + base(p.b, q.b)) / NumericTraits<T>::from_int(4));
}

/// M(X): all one- and two-element subsets of the base with the quarter-sum metric.
template <MetricScalar T>
class PairSpace {
 public:
  PairSpace(MetricSpace<T> base, std::vector<PairLabel> pairs, MetricSpace<T> space)
      : base_(std::move(base)), pairs_(std::move(pairs)), space_(std::move(space)) {}

  const MetricSpace<T>& base() const { return base_; }
  const MetricSpace<T>& space() const { return space_; }
  const std::vector<PairLabel>& pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }

  std::size_t index_of(PairLabel p) const { return pair_index(base_.size(), p); }
  /// Isometric embedding x -> {x, x}.
  std::size_t embed(std::size_t base_index) const { return index_of({base_index, base_index}); }

 private:
  MetricSpace<T> base_;
  std::vector<PairLabel> pairs_;
  MetricSpace<T> space_;
};

template <MetricScalar T>
PairSpace<T> complete_once(const MetricSpace<T>& base, std::size_t cap = kDefaultLabelCap,
                           const Execution& exec = {}) {
  const std::size_t n = base.size();
  const std::uint64_t m = pair_count(n);
  if (m > cap) throw CapExceeded(m, cap);

  std::vector<PairLabel> pairs;
  std::vector<std::string> labels;
  pairs.reserve(m);
  labels.reserve(m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      pairs.emplace_back(i, j);
      labels.push_back(render_pair(base.label(i), base.label(j)));
    }

  std::vector<T> dist(m * m);
  parallel_for(m, exec, [&](std::uint64_t b, std::uint64_t e) {
    for (auto r = b; r < e; ++r)
      for (std::size_t c = 0; c < m; ++c) dist[r * m + c] = pair_distance(base, pairs[r], pairs[c]);
  });
  MetricSpace<T> sp(std::move(labels), std::move(dist));
  return {base, std::move(pairs), std::move(sp)};
}

/// Label counts of M^0 ... M^k, or CapExceeded if any level is over the cap.
inline std::vector<std::uint64_t> projected_sizes(std::size_t n, unsigned k, std::size_t cap) {
  std::vector<std::uint64_t> sizes{n};
  for (unsigned j = 0; j < k; ++j) {
    std::uint64_t prev = sizes.back();
    if (prev > cap || prev > (std::uint64_t{1} << 31)) throw CapExceeded(std::numeric_limits<std::uint64_t>::max(), cap);
    std::uint64_t next = pair_count(prev);
    if (next > cap) throw CapExceeded(next, cap);
    sizes.push_back(next);
  }
  return sizes;
}

/// The iterates M^0(X) = X, M^{j+1}(X) = M(M^j(X)) up to level k, with the pair
/// structure of every level kept for decoding labels back to base points.
template <MetricScalar T>
class Tower {
 public:
  Tower(MetricSpace<T> base) { levels_.push_back(std::move(base)); children_.emplace_back(); }

  unsigned depth() const { return static_cast<unsigned>(levels_.size() - 1); }
  const MetricSpace<T>& level(unsigned j) const { return levels_.at(j); }
  const MetricSpace<T>& top() const { return levels_.back(); }

  /// Children of point i at level j >= 1, as indices into level j-1.
  PairLabel children(unsigned j, std::size_t i) const { return children_.at(j).at(i); }

  /// Image of point i of level j in level j+1 under x -> {x, x}.
  std::size_t embed_up(unsigned j, std::size_t i) const { return pair_index(levels_.at(j).size(), {i, i}); }

  /// Embeds point i of level `from` into level `to` >= from.
  std::size_t embed(unsigned from, unsigned to, std::size_t i) const {
    for (unsigned j = from; j < to; ++j) i = embed_up(j, i);
    return i;
  }

  /// Base labels under point i of level j, with multiplicity, in tree order.
  std::vector<std::string> leaves(unsigned j, std::size_t i) const {
    if (j == 0) return {levels_[0].label(i)};
    auto p = children(j, i);
    auto l = leaves(j - 1, p.a);
    auto r = leaves(j - 1, p.b);
    l.insert(l.end(), r.begin(), r.end());
    return l;
  }

  void push(PairSpace<T> next) {
    children_.push_back(next.pairs());
    levels_.push_back(next.space());
  }

 private:
  std::vector<MetricSpace<T>> levels_;
  std::vector<std::vector<PairLabel>> children_;
};

/// Builds M^0 ... M^k. The cap applies to every level and is checked before any work.
template <MetricScalar T>
Tower<T> complete_k(const MetricSpace<T>& base, unsigned k, std::size_t cap = kDefaultLabelCap,
                    const Execution& exec = {}) {
  projected_sizes(base.size(), k, cap);
  Tower<T> tower(base);
  for (unsigned j = 0; j < k; ++j) tower.push(complete_once(tower.top(), cap, exec));
  return tower;
}

/// All m with d(x,m) = d(x,y)/2 = d(m,y), ascending.
template <MetricScalar T>
std::vector<std::size_t> midpoint_set(const MetricSpace<T>& s, std::size_t x, std::size_t y,
                                      const Tolerance& tol = {}) {
  std::vector<std::size_t> out;
  for (std::size_t m = 0; m < s.size(); ++m)
    if (is_midpoint(s, x, y, m, tol)) out.push_back(m);
  return out;
}

// ---------------------------------------------------------------------------------------------
// Dyadic chains

/// How a subdivision step picks the midpoint of two consecutive chain points.
struct CanonicalMidpoint {};  // the pair {a, b} itself
struct NamedMidpoint {        // a labelled point (embedded upward when it lives at a lower level)
  std::string label;
};
struct IndexedMidpoint {      // the i-th element of the ascending midpoint set
  std::size_t index = 0;
};
using MidpointSelector = std::variant<CanonicalMidpoint, NamedMidpoint, IndexedMidpoint>;

/// 2^k + 1 points of M^k(X) from x to y. When a selector does not yield a midpoint for a given
/// subdivision the canonical pair is used there.
template <MetricScalar T>
struct DyadicChain {
  unsigned level = 0;
  std::vector<std::size_t> points;  // indices into M^level
  std::vector<std::string> labels;
  T step;
  bool isometric = false;  // d(c_i, c_j) = |i - j| * step for all i, j
};

template <MetricScalar T>
std::optional<std::size_t> resolve_label(const Tower<T>& tower, unsigned level, const std::string& label) {
  for (unsigned j = level + 1; j-- > 0;)
    if (auto i = tower.level(j).index_of(label)) return tower.embed(j, level, *i);
  return std::nullopt;
}

template <MetricScalar T>
bool chain_is_isometric(const MetricSpace<T>& s, const std::vector<std::size_t>& pts, const T& step,
                        const Tolerance& tol = {}) {
  using tr = NumericTraits<T>;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (!tr::equal(s(pts[i], pts[j]), T(tr::from_int(static_cast<long>(j - i)) * step), tol)) return false;
  return true;
}

template <MetricScalar T>
DyadicChain<T> dyadic_chain(const Tower<T>& tower, std::size_t x, std::size_t y, unsigned k,
                            const MidpointSelector& selector = CanonicalMidpoint{}, const Tolerance& tol = {}) {
  using tr = NumericTraits<T>;
  if (k > tower.depth()) throw SpaceError("tower has only " + std::to_string(tower.depth()) + " levels");
  const auto& base = tower.level(0);
  if (x >= base.size() || y >= base.size()) throw SpaceError("chain endpoint out of range");

  std::vector<std::size_t> chain{x, y};
  for (unsigned j = 0; j < k; ++j) {
    const auto& next = tower.level(j + 1);
    std::vector<std::size_t> refined;
    refined.reserve(2 * chain.size() - 1);
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      const std::size_t lo = tower.embed_up(j, chain[i]);
      const std::size_t hi = tower.embed_up(j, chain[i + 1]);
      std::size_t mid = pair_index(tower.level(j).size(), {chain[i], chain[i + 1]});
      if (const auto* named = std::get_if<NamedMidpoint>(&selector)) {
        if (auto cand = resolve_label(tower, j + 1, named->label); cand && is_midpoint(next, lo, hi, *cand, tol))
          mid = *cand;
      } else if (const auto* ix = std::get_if<IndexedMidpoint>(&selector)) {
        auto ms = midpoint_set(next, lo, hi, tol);
        if (ix->index < ms.size()) mid = ms[ix->index];
      }
      refined.push_back(lo);
      refined.push_back(mid);
    }
    refined.push_back(tower.embed_up(j, chain.back()));
    chain = std::move(refined);
  }

  DyadicChain<T> out;
  out.level = k;
  const auto& top = tower.level(k);
  T denom = tr::from_int(1);
  for (unsigned j = 0; j < k; ++j) denom *= tr::from_int(2);
  out.step = base(x, y) / denom;
  for (auto p : chain) out.labels.push_back(top.label(p));
  out.isometric = chain_is_isometric(top, chain, out.step, tol);
  out.points = std::move(chain);
  return out;
}

/// Convenience overload that builds the tower itself.
template <MetricScalar T>
DyadicChain<T> dyadic_chain(const MetricSpace<T>& base, std::size_t x, std::size_t y, unsigned k,
                            const MidpointSelector& selector = CanonicalMidpoint{},
                            std::size_t cap = kDefaultLabelCap, const Tolerance& tol = {}) {
  return dyadic_chain(complete_k(base, k, cap), x, y, k, selector, tol);
}

}  // namespace ptolemy_lab
