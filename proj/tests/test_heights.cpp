// Places of Q(t), order functions and heights.

#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace aode;
using aode::test::eq;
using aode::test::frac;
using aode::test::poly;
using aode::test::random_tuple;

namespace {

Rat point_height(const std::vector<RatFunc>& v) { return height_point(std::span<const RatFunc>(v)).value; }
Rat sum_height(const std::vector<RatFunc>& v) { return height_sum_oracle(std::span<const RatFunc>(v)).value; }

}  // namespace

TEST(Places, RejectNonIrreducibleOrNonMonic) {
  EXPECT_THROW(Place::finite(poly({-1, 0, 1})), DomainError);
  EXPECT_THROW(Place::finite(poly({1, 2})), DomainError);
  EXPECT_EQ(Place::finite(poly({1, 0, 1})).weight(), 2);
}

TEST(Order, Examples) {
  EXPECT_EQ(ord_at(frac(poly({1, 0, 0, 1}), poly({0, 1})), Place::infinite()), -2);
  EXPECT_EQ(ord_at(RatFunc(poly({-2, 1})), Place::finite(poly({-2, 1}))), 1);
  EXPECT_EQ(ord_at(frac(poly({1}), poly({1, 0, 1})), Place::finite(poly({1, 0, 1}))), -1);
  EXPECT_FALSE(ord_at(RatFunc(), Place::infinite()).has_value());
}

TEST(HeightPoint, Examples) {
  EXPECT_EQ(height_point({frac(poly({1, 0, 1}), poly({0, 0, 1})), frac(poly({1, 0, 0, 1}), poly({0, 1}))}).value, 4);
  EXPECT_EQ(height_point({RatFunc(1), RatFunc::t()}).value, 1);
  EXPECT_EQ(height_point({RatFunc::t(), RatFunc(poly({0, 0, 1}))}).value, 1);
  EXPECT_THROW(height_point({RatFunc(), RatFunc()}), DomainError);
}

TEST(HeightSumOracle, Examples) {
  EXPECT_EQ(height_sum_oracle({RatFunc(1), RatFunc::t()}).value, 1);
  EXPECT_EQ(height_sum_oracle({frac(poly({1, 0, 1}), poly({0, 0, 1})), frac(poly({1, 0, 0, 1}), poly({0, 1}))}).value,
            4);
  EXPECT_EQ(height_sum_oracle({frac(poly({1}), poly({0, 1})), RatFunc(1)}).value, 1);
  EXPECT_THROW(height_sum_oracle({RatFunc()}), DomainError);
}

TEST(HeightOfElements, Examples) {
  EXPECT_EQ(height_ratfunc(RatFunc(aode::test::t_pow(5))).value, 5);
  EXPECT_EQ(height_ratfunc(frac(poly({1, 0, 1}), poly({0, 1}))).value, 2);
  EXPECT_EQ(height_ratfunc(RatFunc(make_rat(3, 7))).value, 0);
}

TEST(HeightOfEquations, Examples) {
  EXPECT_EQ(height_diffpoly(eq("t*y*y' + y^3 + 1")).value, 1);
  EXPECT_EQ(height_diffpoly(eq("y*y' + y^3")).value, 0);
  EXPECT_EQ(height_diffpoly(eq("t^5*y'")).value, 0);
  const std::map<std::pair<int, int>, RatFunc> coeffs{{{1, 0}, frac(poly({1, 0, 1}), poly({0, 0, 1}))},
                                                     {{0, 1}, frac(poly({1, 0, 0, 1}), poly({0, 1}))}};
  EXPECT_EQ(height_diffpoly(coeffs).value, 4);
  EXPECT_THROW(height_diffpoly(DiffPoly()), DomainError);
}

TEST(HeightProperties, PointHeightEqualsSumOverPlaces) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 200; ++i) {
    const auto v = random_tuple(rng);
    EXPECT_EQ(point_height(v), sum_height(v));
  }
}

TEST(HeightProperties, ScalingInvariance) {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 100; ++i) {
    auto v = random_tuple(rng);
    const Rat before = point_height(v);
    RatFunc s;
    while (s.is_zero()) s = testgen::random_ratfunc(rng, 4);
    for (auto& a : v) a = a * s;
    EXPECT_EQ(point_height(v), before);
  }
}

TEST(HeightProperties, ProductFormula) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 100; ++i) {
    RatFunc a;
    while (a.is_zero()) a = testgen::random_ratfunc(rng, 6);
    long total = *ord_at(a, Place::infinite());
    for (const auto* part : {&a.num(), &a.den()})
      if (part->degree() >= 1)
        for (const auto& f : factor_over_q(*part)) {
          const Place p = Place::finite(f.poly.monic());
          total += static_cast<long>(p.weight()) * *ord_at(a, p);
        }
    EXPECT_EQ(total, 0);
  }
}

TEST(HeightProperties, ElementHeightIsPointHeight) {
  std::mt19937_64 rng(24);
  for (int i = 0; i < 100; ++i) {
    const RatFunc a = testgen::random_ratfunc(rng, static_cast<int>(rng() % 8));
    EXPECT_EQ(height_ratfunc(a).value, height_point({RatFunc(1), a}).value);
  }
}
