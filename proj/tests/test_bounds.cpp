// Classification, degree bounds, lazily evaluated magnitudes and the height inequality checker.

#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace aode;
using aode::test::eq;
using aode::test::poly;
using aode::test::PlantedCurve;
using aode::test::planted_curve;

namespace {

std::string monomial(int i, int j) { return "y^" + std::to_string(i) + "*y'^" + std::to_string(j); }

// Random equation with deg_y > 2 deg_y'.
DiffPoly random_large_y(std::mt19937_64& rng) {
  const int n = 1 + static_cast<int>(rng() % 3);
  const int m = 2 * n + 1 + static_cast<int>(rng() % 3);
  DiffPoly f = testgen::random_diffpoly(rng, {2, m, n});
  f = f + eq(monomial(m, 0)) + eq(monomial(0, n) + "*t");
  return f;
}

}  // namespace

TEST(Index, Examples) {
  EXPECT_EQ(msindex(eq("y'^3 + y^2*y'^2 + t")), 0);
  for (int n = 1; n <= 3; ++n)
    for (int l = 1; l <= 3; ++l)
      EXPECT_EQ(msindex(eq("t*" + monomial(l, n) + " + (t+1)*" + monomial(2 * n + l, 0) + " + t^2")), l);
  EXPECT_EQ(msindex(eq("t*y' - 3*y")), 0);
  EXPECT_THROW(msindex(eq("y^2 + t")), OrderError);
}

TEST(Index, PositiveWhenDegreeInYExceedsTwiceDegreeInDerivative) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 100; ++i) EXPECT_GT(msindex(random_large_y(rng)), 0);
}

TEST(MaximallyComparable, Examples) {
  EXPECT_FALSE(is_maximally_comparable(eq("y'^3 + y^2*y'^2 + t")));
  for (int n = 1; n <= 3; ++n)
    for (int l = 1; l <= 3; ++l)
      EXPECT_FALSE(is_maximally_comparable(eq(monomial(l, n) + " + " + monomial(2 * n + l, 0) + " + t")));
  const DiffPoly f = eq("y'^2 + y");
  EXPECT_TRUE(is_maximally_comparable(f));
  EXPECT_EQ(maximally_comparable_witness(f), (std::pair<int, int>{0, 2}));
}

TEST(MaximallyComparable, InvariantUnderScalingByQt) {
  std::mt19937_64 rng(32);
  for (int i = 0; i < 100; ++i) {
    const DiffPoly f = testgen::random_diffpoly(rng, {2, 3, 2});
    if (f.is_zero()) continue;
    EXPECT_EQ(is_maximally_comparable(f), is_maximally_comparable(f * eq("3*t^2 - 1")));
  }
}

TEST(NewtonCondition, Examples) {
  EXPECT_FALSE(check_newton_condition(eq("y*y' - t")));
  EXPECT_TRUE(check_newton_condition(eq("y^2 + y'")));
  EXPECT_TRUE(check_newton_condition(eq("y'^3 + y")));
  EXPECT_THROW(check_newton_condition(eq("y'^2 + t")), DomainError);
}

TEST(GeneralBound, SmallYBranchIsATower) {
  const LazyMagnitude b = bound_general(eq("y'^3 + y^2*y'^2 + t"));
  ASSERT_FALSE(b.is_exact());
  EXPECT_EQ(b.tower_value().coeff, 75 * 8192);
  EXPECT_EQ(b.tower_value().base, 5);
  EXPECT_EQ(b.tower_value().exponent, 40 * ipow(5, 12) + 7);
  EXPECT_EQ(b.tower_value().addend, 25);
  EXPECT_FALSE(b.materialize().has_value());
  // log10 = (40*5^12 + 7) log10 5 + log10(75*2^13), about 6.83e9 digits
  const DigitBracket d = b.digit_bracket();
  EXPECT_LE(d.lo, d.hi);
  EXPECT_EQ(d.lo, Integer("6825878960"));
  EXPECT_LE(d.hi - d.lo, 1);
}

TEST(GeneralBound, ZeroHeightCollapses) {
  const LazyMagnitude b = bound_general(eq("y^3 + y'"));
  ASSERT_TRUE(b.is_exact());
  EXPECT_EQ(b.exact_value(), 0);
  EXPECT_THROW(bound_general(eq("y*y' - t")), HypothesisError);
}

TEST(PositiveIndexBound, Examples) {
  const LazyMagnitude b = bound_positive_index(eq("y*y' - t"));
  ASSERT_FALSE(b.is_exact());
  EXPECT_EQ(b.tower_value().coeff, 1);
  EXPECT_EQ(b.tower_value().base, 4);
  EXPECT_EQ(b.tower_value().exponent, 1073741824);
  const LazyMagnitude three = bound_positive_index(eq("y*y' - t^3"));
  EXPECT_EQ(three.tower_value().coeff, 3);
  EXPECT_EQ(three.tower_value().exponent, 1073741824);
  const LazyMagnitude autonomous = bound_positive_index(eq("y*y' + y^3 + 1"));
  ASSERT_TRUE(autonomous.is_exact());
  EXPECT_EQ(autonomous.exact_value(), 0);
  EXPECT_THROW(bound_positive_index(eq("t*y' - 3*y")), HypothesisError);
}

TEST(NewtonBound, Examples) {
  // m = 3, n = 1, h = 2
  EXPECT_EQ(bound_newton(eq("y^3 + t^2*y'")), Rat(6));
  // m = 1, n = 3, h = 0
  EXPECT_EQ(bound_newton(eq("y'^3 + y")), make_rat(3, 2));
  // m = 5, n = 2, h = 1
  EXPECT_EQ(bound_newton(eq("y^5 + t*y'^2")), Rat(10));
  EXPECT_THROW(bound_newton(eq("y*y' - t")), HypothesisError);
}

TEST(SeparatedLeadingBound, Examples) {
  EXPECT_EQ(bound_separated_leading(eq("t*y*y' + y^3 + 1")), Rat(3));
  EXPECT_EQ(bound_separated_leading(eq("y*y' - t")), Rat(3));
  EXPECT_EQ(bound_separated_leading(eq("y*y' + y^3 + 1")), Rat(0));
  try {
    bound_separated_leading(eq("y*y' + y^3"));
    FAIL() << "expected a hypothesis error";
  } catch (const HypothesisError& e) {
    EXPECT_EQ(e.hypothesis(), "a_0(0) nonzero");
  }
  EXPECT_THROW(bound_separated_leading(eq("(y + 1)*y' + y^3 + 1")), HypothesisError);
}

TEST(BestBound, Examples) {
  BestBound b = best_bound(eq("y*y' - t"));
  EXPECT_EQ(b.value.exact_value(), 3);
  EXPECT_EQ(b.kind, BoundKind::SeparatedLeading);
  ASSERT_EQ(b.entries.size(), 2u);
  EXPECT_EQ(b.entries[0].kind, BoundKind::PositiveIndex);
  EXPECT_EQ(b.entries[0].value.tower_value().exponent, 1073741824);
  EXPECT_THROW(best_bound(eq("t*y' - 3*y")), NoApplicableBound);
  b = best_bound(eq("y*y' + y^3 + 1"));
  EXPECT_EQ(b.value.exact_value(), 0);
  for (const auto& e : b.entries) EXPECT_EQ(e.value.exact_value(), 0);
}

TEST(BestBound, SeparatedLeadingNeverExceedsPositiveIndex) {
  for (int seed = 0; seed < 60; ++seed) {
    const DiffPoly f = testgen::random_with_msindex(1 + seed % 3, 1 + seed % 2, seed % 3, seed);
    const Classification c = classify(f);
    if (separated_leading_violation(f) || c.total_degree < 2) continue;
    const auto sep = evaluate_bound(f, BoundKind::SeparatedLeading);
    const auto idx = evaluate_bound(f, BoundKind::PositiveIndex);
    const auto order = compare(sep.value, idx.value);
    ASSERT_TRUE(order.has_value());
    EXPECT_NE(*order, std::strong_ordering::greater);
  }
}

TEST(Classification, ApplicableBounds) {
  auto has = [](const Classification& c, BoundKind k) {
    return std::find(c.applicable.begin(), c.applicable.end(), k) != c.applicable.end();
  };
  const Classification small = classify(eq("y'^3 + y^2*y'^2 + t"));
  EXPECT_TRUE(has(small, BoundKind::GeneralSmallY));
  EXPECT_FALSE(small.maximally_comparable);
  const Classification large = classify(eq("y^3 + t^2*y'"));
  EXPECT_TRUE(has(large, BoundKind::GeneralLargeY));
  EXPECT_TRUE(has(large, BoundKind::NewtonLargeY));
  EXPECT_TRUE(classify(eq("t*y' - 3*y")).applicable.empty());
}

TEST(LazyMagnitude, ComparisonMatchesBruteForce) {
  std::mt19937_64 rng(33);
  std::uniform_int_distribution<long> base(2, 9), exponent(1, 10000), coeff(1, 50);
  for (int i = 0; i < 20; ++i) {
    const Integer c = coeff(rng), b = base(rng), e = exponent(rng);
    const LazyMagnitude tower = LazyMagnitude::tower(c, b, e);
    const Integer value = c * ipow(b, e.get_ui());
    for (const Integer& other : {Integer(value - 1), value, Integer(value + 1), Integer(value / 7 + 1)}) {
      const auto order = compare(tower, LazyMagnitude::exact(other));
      ASSERT_TRUE(order.has_value());
      EXPECT_EQ(*order, cmp(value, other) <=> 0);
    }
    const DigitBracket d = tower.digit_bracket();
    const Integer digits = Integer(value.get_str().size());
    EXPECT_LE(d.lo, digits);
    EXPECT_GE(d.hi, digits);
  }
}

TEST(LazyMagnitude, MaterializationRespectsThreshold) {
  const LazyMagnitude small = LazyMagnitude::make(3, 10, 5);
  ASSERT_TRUE(small.is_exact());
  EXPECT_EQ(small.exact_value(), 300000);
  const LazyMagnitude big = LazyMagnitude::make(1, 10, 50, 0, 20);
  EXPECT_FALSE(big.is_exact());
  EXPECT_EQ(big.to_string(20), "10^50");
  EXPECT_EQ(*big.materialize(100), ipow(10, 50));
}

TEST(HeightInequality, Examples) {
  EXPECT_TRUE(check_height_inequality({{{0, 1}, RatFunc(1)}, {{1, 0}, RatFunc(-1)}}, RatFunc::t(), RatFunc::t()));
  EXPECT_TRUE(check_height_inequality({{{0, 1}, RatFunc(1)}, {{2, 0}, -RatFunc::t()}}, RatFunc::t(),
                                      RatFunc(aode::test::t_pow(3))));
  EXPECT_THROW(check_height_inequality({{{0, 1}, RatFunc(1)}, {{1, 0}, RatFunc(-1)}}, RatFunc::t(), RatFunc(2)),
               DomainError);
}

TEST(HeightInequality, HoldsOnPlantedCurves) {
  std::mt19937_64 rng(34);
  for (int i = 0; i < 100; ++i) {
    const PlantedCurve c = planted_curve(rng);
    EXPECT_TRUE(check_height_inequality(c.g, c.a, c.b));
  }
}
