// The changes of variable y = (cz+1)/z and y = 1/z.

#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace aode;
using aode::test::eq;
using aode::test::frac;
using aode::test::poly;

namespace {

std::string in_z(const DiffPoly& g) { return to_string(g, kTransformedNames); }

bool check(const ReductionResult& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return c.holds;
  ADD_FAILURE() << "no check named " << name;
  return false;
}

}  // namespace

TEST(ChooseC, Examples) {
  EXPECT_EQ(choose_c(eq("t*y*y' + y^3 + 1")), 0);
  EXPECT_EQ(choose_c(eq("y*y' + y^3")), 1);
  EXPECT_EQ(choose_c(eq("y' + y*(y - 1)*(y - 2)")), 3);
  EXPECT_THROW(choose_c(eq("y*y'")), DomainError);
}

TEST(MobiusReduce, Examples) {
  const ReductionResult r = mobius_reduce(eq("t*y*y' + y^3 + 1"));
  EXPECT_EQ(r.map.kind, MobiusMap::Kind::ShiftInvert);
  EXPECT_EQ(r.map.c, 0);
  EXPECT_EQ(in_z(r.raw), "-t*z' + z^3 + 1");
  EXPECT_TRUE(r.all_hold());
  const ReductionResult autonomous = mobius_reduce(eq("y*y' + y^3 + 1"));
  EXPECT_EQ(height_diffpoly(autonomous.normalized).value, 0);
  EXPECT_THROW(mobius_reduce(eq("t*y' - 3*y")), HypothesisError);
}

TEST(MobiusReduce, InvariantsOnRandomEquations) {
  int seed = 0;
  for (int n = 1; n <= 3; ++n)
    for (int l = 1; l <= 3; ++l)
      for (int k = 0; k < 12; ++k, ++seed) {
        const DiffPoly f = testgen::random_with_msindex(n, l, 2, static_cast<std::uint64_t>(seed));
        const ReductionResult r = mobius_reduce(f);
        const DiffPoly& g = r.normalized;
        EXPECT_EQ(deg_in(g, Var::YP), n);
        EXPECT_EQ(deg_in(g, Var::Y), 2 * n + l);
        EXPECT_EQ(tdeg_yy(g), 2 * n + l);
        EXPECT_TRUE(check(r, "gcd(b_0..b_n) = 1"));
        EXPECT_TRUE(check(r, "b_i0(0) != 0"));
        EXPECT_LE(height_diffpoly(g).value, height_diffpoly(f).value);
      }
}

TEST(InvertReduce, Examples) {
  const ReductionResult a = invert_reduce(eq("y*y' - t"));
  EXPECT_EQ(a.map.kind, MobiusMap::Kind::Invert);
  EXPECT_EQ(in_z(a.raw), "-t*z^3 - z'");
  EXPECT_TRUE(a.all_hold());
  const ReductionResult b = invert_reduce(eq("t*y*y' + y^3 + 1"));
  EXPECT_EQ(in_z(b.raw), "-t*z' + z^3 + 1");
  EXPECT_TRUE(b.all_hold());
  try {
    invert_reduce(eq("(y + 1)*y' + y^3 + 1"));
    FAIL() << "expected a hypothesis error";
  } catch (const HypothesisError& e) {
    EXPECT_EQ(e.hypothesis(), "leading coefficient alpha*y^l");
  }
}

TEST(Pullback, Examples) {
  const RatFunc inv_t = frac(poly({1}), poly({0, 1}));
  EXPECT_EQ(pullback_solution({MobiusMap::Kind::Invert, 0}, inv_t), RatFunc::t());
  EXPECT_EQ(pullback_solution({MobiusMap::Kind::ShiftInvert, 0}, inv_t), RatFunc::t());
  const RatFunc r = pullback_solution({MobiusMap::Kind::ShiftInvert, 2}, RatFunc::t());
  EXPECT_EQ(r, frac(poly({1, 2}), poly({0, 1})));
  EXPECT_EQ(ratfunc_degree(r), 1);
  EXPECT_THROW(pullback_solution({MobiusMap::Kind::Invert, 0}, RatFunc()), DomainError);
}

TEST(Pullback, SolutionsCorrespondOnPlantedEquations) {
  std::mt19937_64 rng(41);
  int checked = 0;
  for (int i = 0; i < 200 && checked < 40; ++i) {
    const RatFunc r = testgen::random_ratfunc_of_degree(rng, 1 + static_cast<int>(rng() % 3), 3);
    const DiffPoly f = normalize(testgen::plant_equation({r, {1, 3, 1}, static_cast<std::uint64_t>(i)}));
    if (msindex(f) <= 0) continue;
    const ReductionResult red = mobius_reduce(f);
    // z = 1/(r - c) solves the transformed equation and pulls back to r
    const RatFunc z = ratfunc_mobius(r, 0, 1, 1, -red.map.c);
    EXPECT_TRUE(verify_solution(red.normalized, z));
    EXPECT_EQ(pullback_solution(red.map, z), r);
    ++checked;
  }
  EXPECT_GE(checked, 20);
}
