#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ptolemy_lab/metric_space.hpp"
#include "ptolemy_lab/parallel.hpp"
#include "ptolemy_lab/quadruples.hpp"
#include "ptolemy_lab/random.hpp"

namespace ptolemy_lab {

/// The Ptolemy triple of one quadruple (x, y, z, w):
///   ( d(x,y)d(z,w), d(x,z)d(y,w), d(x,w)d(y,z) ).
/// `defect` is (largest - sum of the other two) / largest, so the quadruple is Ptolemy iff
/// defect <= 0. It is -1 when every product vanishes.
template <MetricScalar T>
struct QuadrupleVerdict {
  Quadruple quadruple;
  std::array<T, 3> products;
  T defect;
  bool satisfied = true;
};

/// Strict "worse than" for worst-witness reduction: larger defect, then smaller indices.
template <MetricScalar T>
bool worse_than(const QuadrupleVerdict<T>& a, const QuadrupleVerdict<T>& b) {
  if (a.defect != b.defect) return a.defect > b.defect;
  return a.quadruple < b.quadruple;
}

template <MetricScalar T>
QuadrupleVerdict<T> ptolemy_verdict(const MetricSpace<T>& s, const Quadruple& q, const Tolerance& tol = {}) {
  using tr = NumericTraits<T>;
  const auto [x, y, z, w] = q.idx;
  QuadrupleVerdict<T> v{q, {T(s(x, y) * s(z, w)), T(s(x, z) * s(y, w)), T(s(x, w) * s(y, z))}, tr::zero(), true};
  const auto& p = v.products;
  std::size_t big = 0;
  if (p[1] > p[big]) big = 1;
  if (p[2] > p[big]) big = 2;
  T others = p[(big + 1) % 3] + p[(big + 2) % 3];
  if (p[big] == tr::zero()) {
    v.defect = tr::from_int(-1);
  } else {
    v.defect = (p[big] - others) / p[big];
  }
  v.satisfied = tr::leq(p[big], others, tol);
  return v;
}

struct Exhaustive {};
struct Sampled {
  std::uint64_t count = 10000;
  std::uint64_t seed = 0;
};
using ScanStrategy = std::variant<Exhaustive, Sampled>;

template <MetricScalar T>
struct PtolemyReport {
  ScanStrategy strategy;
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
  std::optional<QuadrupleVerdict<T>> worst;  // empty when n < 4
  bool passed = true;
};

namespace detail {

template <MetricScalar T>
struct ScanAccumulator {
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
  std::optional<QuadrupleVerdict<T>> worst;

  void add(QuadrupleVerdict<T> v) {
    ++checked;
    if (!v.satisfied) ++violations;
    if (!worst || worse_than(v, *worst)) worst = std::move(v);
  }

  static ScanAccumulator merge(ScanAccumulator a, ScanAccumulator b) {
    a.checked += b.checked;
    a.violations += b.violations;
    if (b.worst && (!a.worst || worse_than(*b.worst, *a.worst))) a.worst = std::move(b.worst);
    return a;
  }
};

}  // namespace detail

/// Scans quadruples for the Ptolemy inequality. Exhaustive scans visit all C(n,4) quadruples;
/// sampled scans visit `count` of them chosen by a seeded permutation of the rank range (all of
/// them when count >= C(n,4)). The report is identical for any thread count.
template <MetricScalar T>
PtolemyReport<T> check_ptolemy(const MetricSpace<T>& s, ScanStrategy strategy = Exhaustive{},
                               const Tolerance& tol = {}, const Execution& exec = {}) {
  using Acc = detail::ScanAccumulator<T>;
  const std::size_t n = s.size();
  const auto all = enumerate_quadruples(n);
  Acc acc;
  if (std::holds_alternative<Exhaustive>(strategy)) {
    acc = parallel_reduce<Acc>(
        all.size(), exec, Acc{},
        [&](std::uint64_t b, std::uint64_t e) {
          Acc a;
          for (const auto& q : all.slice(b, e)) a.add(ptolemy_verdict(s, q, tol));
          return a;
        },
        Acc::merge);
  } else {
    const auto& smp = std::get<Sampled>(strategy);
    const auto ranks = sample_without_replacement(all.size(), smp.count, smp.seed);
    acc = parallel_reduce<Acc>(
        ranks.size(), exec, Acc{},
        [&](std::uint64_t b, std::uint64_t e) {
          Acc a;
          for (auto k = b; k < e; ++k) a.add(ptolemy_verdict(s, unrank_quadruple(n, ranks[k]), tol));
          return a;
        },
        Acc::merge);
  }
  PtolemyReport<T> rep{strategy, acc.checked, acc.violations, std::move(acc.worst), acc.violations == 0};
  return rep;
}

// ---------------------------------------------------------------------------------------------
// Moebius invariance

/// ( d(x,y)d(z,w) / d(x,w)d(y,z), d(x,z)d(y,w) / d(x,w)d(y,z), 1 ) for q = (x, y, z, w).
template <MetricScalar T>
std::array<T, 3> mobius_triple(const MetricSpace<T>& s, const Quadruple& q) {
  const auto [x, y, z, w] = q.idx;
  T den = s(x, w) * s(y, z);
  if (den == NumericTraits<T>::zero()) throw SpaceError("mobius_triple: zero denominator (coincident points)");
  return {T(s(x, y) * s(z, w) / den), T(s(x, z) * s(y, w) / den), NumericTraits<T>::from_int(1)};
}

template <MetricScalar T>
struct MobiusWitness {
  Quadruple quadruple;
  std::array<T, 3> triple_a;
  std::array<T, 3> triple_b;
  T discrepancy;  // largest relative difference between the sorted cross-ratio pairs
};

template <MetricScalar T>
struct MobiusReport {
  std::uint64_t checked = 0;
  std::uint64_t mismatches = 0;
  std::optional<MobiusWitness<T>> worst;
  bool passed = true;
};

/// Compares the cross-ratio pairs of two metrics on the same (positionally matched) point set.
template <MetricScalar T>
MobiusReport<T> check_mobius_equivalence(const MetricSpace<T>& a, const MetricSpace<T>& b,
                                         const Tolerance& tol = {}, const Execution& exec = {}) {
  using tr = NumericTraits<T>;
  if (a.size() != b.size())
    throw SpaceError("mobius equivalence needs equal point counts (" + std::to_string(a.size()) + " vs " +
                     std::to_string(b.size()) + ")");
  struct Acc {
    std::uint64_t checked = 0, mismatches = 0;
    std::optional<MobiusWitness<T>> worst;
  };
  auto better = [](const MobiusWitness<T>& x, const MobiusWitness<T>& y) {
    if (x.discrepancy != y.discrepancy) return x.discrepancy > y.discrepancy;
    return x.quadruple < y.quadruple;
  };
  auto rel = [](const T& u, const T& v) {
    T hi = u > v ? u : v;
    T diff = u > v ? T(u - v) : T(v - u);
    return hi == tr::zero() ? tr::zero() : T(diff / hi);
  };
  const auto all = enumerate_quadruples(a.size());
  Acc acc = parallel_reduce<Acc>(
      all.size(), exec, Acc{},
      [&](std::uint64_t bgn, std::uint64_t end) {
        Acc r;
        for (const auto& q : all.slice(bgn, end)) {
          auto ta = mobius_triple(a, q);
          auto tb = mobius_triple(b, q);
          std::array<T, 2> pa{ta[0], ta[1]}, pb{tb[0], tb[1]};
          std::sort(pa.begin(), pa.end());
          std::sort(pb.begin(), pb.end());
          bool agree = tr::equal(pa[0], pb[0], tol) && tr::equal(pa[1], pb[1], tol);
          T d0 = rel(pa[0], pb[0]), d1 = rel(pa[1], pb[1]);
          MobiusWitness<T> w{q, std::move(ta), std::move(tb), d0 > d1 ? d0 : d1};
          ++r.checked;
          if (!agree) ++r.mismatches;
          if (!r.worst || better(w, *r.worst)) r.worst = std::move(w);
        }
        return r;
      },
      [&](Acc x, Acc y) {
        x.checked += y.checked;
        x.mismatches += y.mismatches;
        if (y.worst && (!x.worst || better(*y.worst, *x.worst))) x.worst = std::move(y.worst);
        return x;
      });
  return {acc.checked, acc.mismatches, std::move(acc.worst), acc.mismatches == 0};
}

// ---------------------------------------------------------------------------------------------
// Midpoints and distance convexity

template <MetricScalar T>
bool is_midpoint(const MetricSpace<T>& s, std::size_t x, std::size_t y, std::size_t m, const Tolerance& tol = {}) {
  using tr = NumericTraits<T>;
  T half = s(x, y) / tr::from_int(2);
  return tr::equal(s(x, m), half, tol) && tr::equal(s(m, y), half, tol);
}

/// d(m,z) <= (d(x,z) + d(y,z)) / 2 for a verified midpoint m of x and y.
template <MetricScalar T>
bool check_distance_convexity(const MetricSpace<T>& s, std::size_t x, std::size_t y, std::size_t m, std::size_t z,
                              const Tolerance& tol = {}) {
  using tr = NumericTraits<T>;
  if (!is_midpoint(s, x, y, m, tol))
    throw SpaceError("'" + s.label(m) + "' is not a midpoint of '" + s.label(x) + "' and '" + s.label(y) + "'");
  return tr::leq(s(m, z), T((s(x, z) + s(y, z)) / tr::from_int(2)), tol);
}

// ---------------------------------------------------------------------------------------------
// Proof-trace inequalities along two geodesics from p- to p+

/// Points of the two geodesics at parameter s: x = gamma1(s), y = gamma2(s), m a midpoint of x, y.
template <MetricScalar T>
struct ChainSample {
  T s;
  std::size_t x, y, m;
};

template <MetricScalar T>
struct Theorem2Config {
  MetricSpace<T> space;
  std::size_t p_minus = 0, p_plus = 0;
  std::vector<ChainSample<T>> samples;
};

class ConfigError : public SpaceError {
 public:
  using SpaceError::SpaceError;
};

/// Throws ConfigError unless every sample sits on the interval C(p-, p+) at parameter s
/// and carries a genuine midpoint.
template <MetricScalar T>
void validate_config(const Theorem2Config<T>& c, const Tolerance& tol = {}) {
  using tr = NumericTraits<T>;
  const auto& sp = c.space;
  const std::size_t n = sp.size();
  if (c.p_minus >= n || c.p_plus >= n) throw ConfigError("endpoint index out of range");
  const T len = sp(c.p_minus, c.p_plus);
  auto on_interval = [&](std::size_t v) {
    return tr::equal(len, T(sp(c.p_minus, v) + sp(v, c.p_plus)), tol);
  };
  for (const auto& smp : c.samples) {
    const std::string where = "sample s=" + tr::format(smp.s);
    if (smp.x >= n || smp.y >= n || smp.m >= n) throw ConfigError(where + ": index out of range");
    if (!(smp.s > tr::zero()) || !tr::leq(smp.s, len, tol)) throw ConfigError(where + ": s outside (0, L]");
    if (!on_interval(smp.x) || !on_interval(smp.y)) throw ConfigError(where + ": chain point not in C(p-, p+)");
    if (!tr::equal(sp(c.p_minus, smp.x), smp.s, tol) || !tr::equal(sp(c.p_minus, smp.y), smp.s, tol))
      throw ConfigError(where + ": chain point not at distance s from p-");
    if (!is_midpoint(sp, smp.x, smp.y, smp.m, tol)) throw ConfigError(where + ": m is not a midpoint of x and y");
  }
}

template <MetricScalar T>
struct InequalityCheck {
  std::string name;
  T lhs, rhs;
  T slack;  // >= 0 iff the inequality holds
  bool holds = true;
};

template <MetricScalar T>
struct TraceReport {
  T s, t;
  std::array<InequalityCheck<T>, 3> checks;
  bool passed = true;
};

/// Evaluates, for parameters 0 < s < t <= L,
///   midpoint_sum         |m_s x_t| + |m_s y_t| >= |x_t y_t|
///   scaled_midpoint_sum  |m_t x_s| + |m_t y_s| >= (t/s) |x_s y_s|
///   product_bound        |m_s x_t||m_t x_s| + |m_s y_t||m_t y_s| <= 1/2 |x_s y_s||x_t y_t| + 2(t-s)|m_s m_t|
template <MetricScalar T>
TraceReport<T> theorem2_trace(const Theorem2Config<T>& c, const T& s, const T& t, const Tolerance& tol = {}) {
  using tr = NumericTraits<T>;
  validate_config(c, tol);
  const auto& d = c.space;
  const T len = d(c.p_minus, c.p_plus);
  if (!(s > tr::zero()) || !(s < t) || !tr::leq(t, len, tol)) throw ConfigError("theorem2_trace needs 0 < s < t <= L");
  auto find = [&](const T& param) -> const ChainSample<T>& {
    for (const auto& smp : c.samples)
      if (tr::equal(smp.s, param, tol)) return smp;
    throw ConfigError("no chain sample at parameter " + tr::format(param));
  };
  const auto& S = find(s);
  const auto& U = find(t);

  auto at_least = [&](std::string name, T lhs, T rhs) {
    T slack = lhs - rhs;
    bool ok = tr::leq(rhs, lhs, tol);
    return InequalityCheck<T>{std::move(name), std::move(lhs), std::move(rhs), std::move(slack), ok};
  };
  auto at_most = [&](std::string name, T lhs, T rhs) {
    T slack = rhs - lhs;
    bool ok = tr::leq(lhs, rhs, tol);
    return InequalityCheck<T>{std::move(name), std::move(lhs), std::move(rhs), std::move(slack), ok};
  };

  TraceReport<T> rep{s, t, {
      at_least("midpoint_sum", T(d(S.m, U.x) + d(S.m, U.y)), d(U.x, U.y)),
      at_least("scaled_midpoint_sum", T(d(U.m, S.x) + d(U.m, S.y)), T(t / s * d(S.x, S.y))),
      at_most("product_bound", T(d(S.m, U.x) * d(U.m, S.x) + d(S.m, U.y) * d(U.m, S.y)),
              T(d(S.x, S.y) * d(U.x, U.y) / tr::from_int(2) + tr::from_int(2) * (t - s) * d(S.m, U.m))),
  }};
  rep.passed = rep.checks[0].holds && rep.checks[1].holds && rep.checks[2].holds;
  return rep;
}

}  // namespace ptolemy_lab
