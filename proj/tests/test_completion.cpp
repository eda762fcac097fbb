#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "ptolemy_lab/completion.hpp"
#include "ptolemy_lab/model_spaces.hpp"
#include "ptolemy_lab/ptolemy.hpp"
#include "support.hpp"

using namespace ptolemy_lab;
using ptolemy_lab::testing::random_band_space;
using ptolemy_lab::testing::random_line_space;
using ptolemy_lab::testing::random_small_metric;

namespace {

std::set<std::string> labels_of(const MetricSpace<Rational>& s, const std::vector<std::size_t>& idx) {
  std::set<std::string> out;
  for (auto i : idx) out.insert(s.label(i));
  return out;
}

}  // namespace

TEST(PairDistance, HandComputed) {
  auto s = gen_paper_four_point();  // x y m1 m2
  // {x,x} to {y,y}: (2+2+2+2)/4
  EXPECT_EQ(pair_distance(s, {0, 0}, {1, 1}), Rational(2));
  // {x,x} to {x,y}: (0+2+0+2)/4
  EXPECT_EQ(pair_distance(s, {0, 0}, {0, 1}), Rational(1));
  // {x,y} to {m1,m2}: (1+1+1+1)/4
  EXPECT_EQ(pair_distance(s, {0, 1}, {2, 3}), Rational(1));
  // {x,m1} to {y,m2}: (2+1+1+1)/4
  EXPECT_EQ(pair_distance(s, {0, 2}, {1, 3}), Rational(5, 4));
  EXPECT_EQ(pair_distance(s, {2, 3}, {3, 2}), Rational(0));
  EXPECT_THROW(pair_distance(s, {0, 4}, {1, 1}), SpaceError);
}

TEST(PairIndex, MatchesEnumeration) {
  for (std::size_t n : {1u, 2u, 5u, 10u}) {
    std::size_t r = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) EXPECT_EQ(pair_index(n, {i, j}), r++);
    EXPECT_EQ(r, pair_count(n));
  }
}

TEST(CompleteOnce, PaperSpace) {
  auto m1 = complete_once(gen_paper_four_point());
  const auto& sp = m1.space();
  EXPECT_EQ(sp.size(), 10u);
  EXPECT_EQ(sp.label(0), "{x,x}");
  EXPECT_EQ(*sp.index_of("{m1,y}"), m1.index_of({1, 2}));  // labels are rendered sorted
  EXPECT_TRUE(validate_metric(sp).passed);
  EXPECT_TRUE(check_ptolemy(sp).passed);
  // x -> {x,x} is an isometric embedding
  const auto& base = m1.base();
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(sp(m1.embed(i), m1.embed(j)), base(i, j));
}

TEST(CompleteOnce, MidpointsOfTheDiagonal) {
  auto m1 = complete_once(gen_paper_four_point()).space();
  auto xx = *m1.index_of("{x,x}"), yy = *m1.index_of("{y,y}");
  auto ms = labels_of(m1, midpoint_set(m1, xx, yy));
  EXPECT_EQ(ms, (std::set<std::string>{"{x,y}", "{m1,m1}", "{m2,m2}", "{m1,m2}"}));
}

TEST(CompleteOnce, PreservesMetricAndPtolemy) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const std::size_t n = 3 + seed % 5;  // 3..7
    auto s = random_small_metric(n, seed);
    auto m = complete_once(s).space();
    EXPECT_TRUE(validate_metric(m).passed) << "seed " << seed;
    // quarter sums of a Ptolemy space must be Ptolemy again; check small cases exhaustively
    if (n <= 4) {
      auto p = random_band_space(n, seed);
      EXPECT_TRUE(check_ptolemy(complete_once(p).space()).passed);
      auto l = random_line_space(n, seed);
      EXPECT_TRUE(check_ptolemy(complete_once(l).space()).passed);
    }
  }
}

TEST(CompleteOnce, ThreadIndependent) {
  auto s = random_small_metric(9, 4);
  auto a = complete_once(s, kDefaultLabelCap, Execution{1}).space();
  auto b = complete_once(s, kDefaultLabelCap, Execution{8}).space();
  EXPECT_EQ(a.labels(), b.labels());
  EXPECT_EQ(a.data(), b.data());
}

TEST(CompleteK, IdentityAndSizes) {
  auto base = gen_paper_four_point();
  auto t0 = complete_k(base, 0);
  EXPECT_EQ(t0.depth(), 0u);
  EXPECT_EQ(t0.top().labels(), base.labels());
  EXPECT_EQ(t0.top().data(), base.data());

  auto t2 = complete_k(base, 2);
  EXPECT_EQ(t2.level(1).size(), 10u);
  EXPECT_EQ(t2.top().size(), 55u);
  EXPECT_EQ(projected_sizes(4, 3, kDefaultLabelCap), (std::vector<std::uint64_t>{4, 10, 55, 1540}));
}

TEST(CompleteK, SecondIterateIsPtolemy) {
  auto t2 = complete_k(gen_paper_four_point(), 2);
  auto rep = check_ptolemy(t2.top());
  EXPECT_EQ(rep.checked, 341055u);
  EXPECT_TRUE(rep.passed);
  EXPECT_TRUE(validate_metric(t2.top()).passed);
}

TEST(CompleteK, CapIsCheckedUpFront) {
  auto base = gen_paper_four_point();
  try {
    complete_k(base, 3, 100);
    FAIL() << "expected CapExceeded";
  } catch (const CapExceeded& e) {
    EXPECT_EQ(e.projected(), 1540u);
    EXPECT_EQ(e.cap(), 100u);
  }
  EXPECT_THROW(complete_once(base, 9), CapExceeded);
  EXPECT_NO_THROW(complete_once(base, 10));
  EXPECT_THROW(complete_k(base, 6), CapExceeded);
}

TEST(Tower, LeavesAndEmbedding) {
  auto t = complete_k(gen_paper_four_point(), 2);
  auto i = *t.top().index_of("{{m1,x},{x,y}}");
  EXPECT_EQ(t.leaves(2, i), (std::vector<std::string>{"x", "y", "x", "m1"}));  // children in index order
  auto m1 = *t.level(0).index_of("m1");
  EXPECT_EQ(t.top().label(t.embed(0, 2, m1)), "{{m1,m1},{m1,m1}}");
  EXPECT_EQ(*resolve_label(t, 2, "m1"), t.embed(0, 2, m1));
  EXPECT_FALSE(resolve_label(t, 2, "nope").has_value());
}

TEST(DyadicChain, CanonicalLevelsOneAndTwo) {
  auto base = gen_paper_four_point();
  auto c1 = dyadic_chain(base, 0, 1, 1);
  EXPECT_EQ(c1.points.size(), 3u);
  EXPECT_EQ(c1.labels, (std::vector<std::string>{"{x,x}", "{x,y}", "{y,y}"}));
  EXPECT_EQ(c1.step, Rational(1));
  EXPECT_TRUE(c1.isometric);

  auto c2 = dyadic_chain(base, 0, 1, 2);
  EXPECT_EQ(c2.points.size(), 5u);
  EXPECT_EQ(c2.step, Rational(1, 2));
  EXPECT_TRUE(c2.isometric);
  EXPECT_EQ(c2.labels.front(), "{{x,x},{x,x}}");
  EXPECT_EQ(c2.labels[2], "{{x,y},{x,y}}");
  EXPECT_EQ(c2.labels.back(), "{{y,y},{y,y}}");
}

TEST(DyadicChain, DistinctSelectorsGiveDistinctGeodesics) {
  auto t = complete_k(gen_paper_four_point(), 2);
  auto a = dyadic_chain(t, 0, 1, 2, NamedMidpoint{"m1"});
  auto b = dyadic_chain(t, 0, 1, 2, NamedMidpoint{"m2"});
  EXPECT_TRUE(a.isometric);
  EXPECT_TRUE(b.isometric);
  EXPECT_NE(a.points, b.points);
  EXPECT_EQ(a.labels[2], "{{m1,m1},{m1,m1}}");
  EXPECT_EQ(b.labels[2], "{{m2,m2},{m2,m2}}");
  // both are distance-preserving copies of [0, 2]
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(t.top()(a.points[0], a.points[i]), Rational(static_cast<long>(i)) / 2);

  auto idx = dyadic_chain(t, 0, 1, 2, IndexedMidpoint{1});
  EXPECT_TRUE(idx.isometric);
  // an unusable name falls back to the canonical choice
  auto fb = dyadic_chain(t, 0, 1, 2, NamedMidpoint{"x"});
  EXPECT_EQ(fb.points, dyadic_chain(t, 0, 1, 2).points);
  EXPECT_THROW(dyadic_chain(t, 0, 1, 3), SpaceError);
}

TEST(DyadicChain, IsometricOverRandomPtolemyBases) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    auto base = random_band_space(3, seed);
    auto t = complete_k(base, 2);
    for (std::size_t x = 0; x < 3; ++x)
      for (std::size_t y = x + 1; y < 3; ++y) EXPECT_TRUE(dyadic_chain(t, x, y, 2).isometric);
  }
}
