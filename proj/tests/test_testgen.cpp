// Generators of planted-solution equations and of equations with a prescribed index.

#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace aode;
using aode::test::eq;
using aode::test::frac;
using aode::test::poly;

TEST(PlantWith, Examples) {
  const DiffPoly one = DiffPoly::constant(1);
  EXPECT_EQ(testgen::plant_with(RatFunc::t(), one, DiffPoly{}), eq("y' - 1"));
  EXPECT_EQ(testgen::plant_with(frac(poly({1}), poly({0, 1})), one, DiffPoly{}), eq("t^2*y' + 1"));
  EXPECT_EQ(testgen::plant_with(RatFunc::t(), DiffPoly::y(), one), eq("y*y' - t"));
}

TEST(PlantEquation, PlantedSolutionSolves) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 100; ++i) {
    const RatFunc r = testgen::random_ratfunc_of_degree(rng, 1 + i % 4, 4);
    const DiffPoly f = testgen::plant_equation({r, {2, 2, 2}, static_cast<std::uint64_t>(i)});
    EXPECT_FALSE(f.is_zero());
    EXPECT_GE(deg_in(f, Var::YP), 1);
    EXPECT_TRUE(verify_solution(f, r)) << to_string(f);
  }
  EXPECT_THROW(testgen::plant_equation({RatFunc(3), {1, 1, 1}, 0}), DomainError);
}

TEST(PlantEquation, Deterministic) {
  const RatFunc r = frac(poly({1, 2}), poly({-1, 0, 1}));
  for (std::uint64_t seed : {0u, 1u, 99u})
    EXPECT_EQ(testgen::plant_equation({r, {2, 1, 1}, seed}), testgen::plant_equation({r, {2, 1, 1}, seed}));
}

TEST(RandomWithMsindex, HasTheRequestedShape) {
  int seed = 0;
  for (int n = 1; n <= 3; ++n)
    for (int l = 1; l <= 4; ++l)
      for (int k = 0; k < 9; ++k, ++seed) {
        const DiffPoly f = testgen::random_with_msindex(n, l, 3, static_cast<std::uint64_t>(seed));
        EXPECT_EQ(deg_in(f, Var::YP), n);
        EXPECT_EQ(msindex(f), l) << to_string(f);
        EXPECT_LE(height_diffpoly(f).value, 3);
        EXPECT_FALSE(y_prime_coefficients(f)[0].coeff(0).is_zero());
        EXPECT_EQ(f, testgen::random_with_msindex(n, l, 3, static_cast<std::uint64_t>(seed)));
      }
  EXPECT_THROW(testgen::random_with_msindex(0, 1, 1, 0), DomainError);
}

TEST(RandomRatfunc, DegreeAndDeterminism) {
  std::mt19937_64 a(3), b(3);
  for (int d = 1; d <= 6; ++d) {
    const RatFunc r = testgen::random_ratfunc_of_degree(a, d, 5);
    EXPECT_EQ(ratfunc_degree(r), d);
    EXPECT_EQ(r, testgen::random_ratfunc_of_degree(b, d, 5));
  }
}
