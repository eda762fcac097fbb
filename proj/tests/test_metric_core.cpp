#include <gtest/gtest.h>

#include <set>
#include <vector>

#include "ptolemy_lab/metric_space.hpp"
#include "ptolemy_lab/model_spaces.hpp"
#include "ptolemy_lab/parallel.hpp"
#include "ptolemy_lab/quadruples.hpp"
#include "ptolemy_lab/random.hpp"

using namespace ptolemy_lab;

namespace {

std::vector<std::vector<std::string>> text_matrix(std::initializer_list<std::initializer_list<const char*>> rows) {
  std::vector<std::vector<std::string>> m;
  for (auto r : rows) m.emplace_back(r.begin(), r.end());
  return m;
}

// Brute-force oracle: all 4-subsets by nested loops.
std::vector<Quadruple> nested_loop_quadruples(std::size_t n) {
  std::vector<Quadruple> out;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c)
        for (std::size_t d = c + 1; d < n; ++d) out.push_back({{a, b, c, d}});
  return out;
}

}  // namespace

TEST(Scalar, ExactParsing) {
  using tr = NumericTraits<Rational>;
  EXPECT_EQ(tr::parse("1/3"), Rational(1, 3));
  EXPECT_EQ(tr::parse(" 2/4 "), Rational(1, 2));
  EXPECT_EQ(tr::parse("0.25"), Rational(1, 4));
  EXPECT_EQ(tr::parse("-1.5e-1"), Rational(-3, 20));
  EXPECT_EQ(tr::parse("7"), Rational(7));
  EXPECT_THROW(tr::parse("1/0"), ParseError);
  EXPECT_THROW(tr::parse("abc"), ParseError);
  EXPECT_THROW(tr::parse(""), ParseError);
  EXPECT_THROW(tr::parse("1/-2"), ParseError);
}

TEST(Scalar, FloatToleranceRule) {
  using tr = NumericTraits<double>;
  Tolerance tol{1e-9};
  EXPECT_TRUE(tr::leq(1.0 + 5e-10, 1.0, tol));
  EXPECT_FALSE(tr::leq(1.0 + 3e-9, 1.0, tol));
  // absolute slack near zero
  EXPECT_TRUE(tr::leq(5e-10, 0.0, tol));
  EXPECT_DOUBLE_EQ(tr::parse("1/4"), 0.25);
  EXPECT_THROW(tr::parse("1.0x"), ParseError);
}

TEST(BuildSpace, PaperFourPointFromText) {
  auto s = build_space<Rational>({"x", "y", "m1", "m2"}, text_matrix({{"0", "2", "1", "1"},
                                                                      {"2", "0", "1", "1"},
                                                                      {"1", "1", "0", "1"},
                                                                      {"1", "1", "1", "0"}}));
  EXPECT_EQ(s.size(), 4u);
  EXPECT_EQ(s(0, 1), Rational(2));
  EXPECT_EQ(s(2, 3), Rational(1));
  EXPECT_EQ(*s.index_of("m2"), 3u);
  EXPECT_FALSE(s.index_of("z").has_value());
}

TEST(BuildSpace, OnePointAndExactThird) {
  auto one = build_space<Rational>({"a"}, text_matrix({{"0"}}));
  EXPECT_EQ(one.size(), 1u);
  EXPECT_TRUE(validate_metric(one).passed);

  auto third = build_space<Rational>({"a", "b"}, text_matrix({{"0", "1/3"}, {"1/3", "0"}}));
  EXPECT_EQ(third(0, 1), Rational(1, 3));
  EXPECT_EQ(NumericTraits<Rational>::format(third(1, 0)), "1/3");
}

TEST(BuildSpace, Errors) {
  EXPECT_THROW(build_space<double>({"a", "b"}, text_matrix({{"0", "1"}})), SpaceError);
  EXPECT_THROW(build_space<double>({"a", "b"}, text_matrix({{"0", "1"}, {"1"}})), SpaceError);
  EXPECT_THROW(build_space<Rational>({"a", "b"}, text_matrix({{"0", "x/y"}, {"1", "0"}})), SpaceError);
  EXPECT_THROW(build_space<double>({"a", "a"}, text_matrix({{"0", "1"}, {"1", "0"}})), SpaceError);
}

TEST(Validate, PaperSpacePasses) {
  auto rep = validate_metric(gen_paper_four_point());
  EXPECT_TRUE(rep.passed);
  EXPECT_TRUE(rep.violations.empty());
}

TEST(Validate, TriangleWitnessIsLexicographicallySmallest) {
  auto s = build_space<Rational>({"a", "b", "c"}, text_matrix({{"0", "1", "3"}, {"1", "0", "1"}, {"3", "1", "0"}}));
  auto rep = validate_metric(s);
  ASSERT_FALSE(rep.passed);
  ASSERT_EQ(rep.violations.front().kind, ViolationKind::triangle);
  EXPECT_EQ(rep.violations.front().witness, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(rep.violations.front().magnitude, Rational(1));
  EXPECT_EQ(rep.total_violations, 2u);  // (a,b,c) and (c,b,a)
}

TEST(Validate, AsymmetryDiagonalPositivity) {
  auto asym = build_space<double>({"a", "b"}, text_matrix({{"0", "1"}, {"2", "0"}}));
  auto r1 = validate_metric(asym);
  ASSERT_FALSE(r1.passed);
  EXPECT_EQ(r1.violations.front().kind, ViolationKind::symmetry);

  auto diag = build_space<double>({"a", "b"}, text_matrix({{"0.5", "1"}, {"1", "0"}}));
  EXPECT_EQ(validate_metric(diag).violations.front().kind, ViolationKind::diagonal);

  // pseudometrics are rejected
  auto pseudo = build_space<Rational>({"a", "b", "c"},
                                      text_matrix({{"0", "0", "1"}, {"0", "0", "1"}, {"1", "1", "0"}}));
  auto r3 = validate_metric(pseudo);
  ASSERT_FALSE(r3.passed);
  EXPECT_EQ(r3.violations.front().kind, ViolationKind::positivity);
}

TEST(Validate, IdempotentAndOrderIndependent) {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    auto g = gen_cloud(7, 2, Norm::euclidean(), 100 + trial);
    std::vector<std::size_t> perm{6, 2, 4, 0, 1, 5, 3};
    for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
    auto a = validate_metric(g.space);
    auto b = validate_metric(g.space);
    auto c = validate_metric(g.space.subspace(perm));
    EXPECT_EQ(a.passed, b.passed);
    EXPECT_EQ(a.total_violations, b.total_violations);
    EXPECT_EQ(a.passed, c.passed);
  }
}

TEST(Quadruples, Counts) {
  EXPECT_EQ(enumerate_quadruples(3).size(), 0u);
  EXPECT_TRUE(enumerate_quadruples(0).empty());
  auto four = enumerate_quadruples(4);
  ASSERT_EQ(four.size(), 1u);
  EXPECT_EQ((*four.begin()).idx, (std::array<std::size_t, 4>{0, 1, 2, 3}));
  EXPECT_EQ(enumerate_quadruples(6).size(), 15u);
  // n = 30 against the nested-loop oracle
  EXPECT_EQ(nested_loop_quadruples(30).size(), 27405u);
  EXPECT_EQ(enumerate_quadruples(30).size(), 27405u);
}

TEST(Quadruples, LexicographicOrderMatchesOracle) {
  for (std::size_t n : {4u, 5u, 9u, 13u}) {
    auto oracle = nested_loop_quadruples(n);
    std::vector<Quadruple> got(enumerate_quadruples(n).begin(), enumerate_quadruples(n).end());
    ASSERT_EQ(got, oracle) << "n=" << n;
    for (std::size_t r = 0; r < oracle.size(); ++r) {
      EXPECT_EQ(rank_quadruple(n, oracle[r]), r);
      EXPECT_EQ(unrank_quadruple(n, r), oracle[r]);
    }
  }
}

TEST(Quadruples, PartitionedConsumptionEqualsSerial) {
  const std::size_t n = 17;
  auto all = enumerate_quadruples(n);
  std::vector<Quadruple> serial(all.begin(), all.end());
  for (unsigned threads : {1u, 2u, 3u, 8u}) {
    auto merged = parallel_reduce<std::vector<Quadruple>>(
        all.size(), Execution{threads}, {},
        [&](std::uint64_t b, std::uint64_t e) {
          std::vector<Quadruple> part;
          for (const auto& q : all.slice(b, e)) part.push_back(q);
          return part;
        },
        [](std::vector<Quadruple> x, std::vector<Quadruple> y) {
          x.insert(x.end(), y.begin(), y.end());
          return x;
        });
    EXPECT_EQ(merged, serial) << threads << " threads";
  }
}

TEST(Sampling, WithoutReplacementAndSeeded) {
  auto a = sample_without_replacement(1000, 300, 42);
  auto b = sample_without_replacement(1000, 300, 42);
  auto c = sample_without_replacement(1000, 300, 43);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
  std::set<std::uint64_t> uniq(a.begin(), a.end());
  EXPECT_EQ(uniq.size(), 300u);
  EXPECT_LT(*uniq.rbegin(), 1000u);
  auto full = sample_without_replacement(50, 100, 1);
  EXPECT_EQ(std::set<std::uint64_t>(full.begin(), full.end()).size(), 50u);
}

TEST(Spaces, ScaledAndSubspace) {
  auto s = gen_paper_four_point();
  auto t = s.scaled(Rational(3));
  EXPECT_EQ(t(0, 1), Rational(6));
  std::vector<std::size_t> idx{2, 0};
  auto sub = s.subspace(idx);
  EXPECT_EQ(sub.label(0), "m1");
  EXPECT_EQ(sub(0, 1), Rational(1));
}
