// Constant solutions, the ansatz system, the polynomial system solver and the full search.

#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace aode;
using aode::test::eq;
using aode::test::frac;
using aode::test::poly;

namespace {

QPoly x(std::size_t i) { return QPoly::var(i); }
QPoly k(long c) { return QPoly::constant(Rat(c)); }

// Value of e at the point, substituting the unknowns one by one.
Rat value_at(QPoly e, const std::vector<Rat>& point) {
  for (std::size_t i = 0; i < point.size(); ++i) e = e.evaluate(i, point[i]);
  return e.is_zero() ? Rat(0) : e.terms().front().c;
}

bool found(const SolutionSet& s, const RatFunc& r) {
  for (const auto& sol : s.rational_solutions)
    if (sol == r) return true;
  for (const auto& fam : s.families)
    if (fam.contains(r)) return true;
  return false;
}

}  // namespace

TEST(ConstantSolutions, Examples) {
  const ConstantSolutions a = constant_solutions(eq("y' + y^2 - y"));
  EXPECT_EQ(a.variety.degree(), 2);
  EXPECT_EQ(a.rational_roots, (std::vector<Rat>{Rat(0), Rat(1)}));
  const ConstantSolutions b = constant_solutions(eq("y' + t*y - y^2"));
  EXPECT_EQ(b.rational_roots, std::vector<Rat>{Rat(0)});
  const ConstantSolutions c = constant_solutions(eq("y'^2 + t*y'"));
  EXPECT_TRUE(c.every_constant_solves());
  const ConstantSolutions d = constant_solutions(eq("y' + y^2 + 1"));
  EXPECT_TRUE(d.rational_roots.empty());
  EXPECT_FALSE(d.every_constant_solves());
}

TEST(AnsatzSystem, Examples) {
  // p = u1 t + u0, q = 1: p' - 1 = u1 - 1
  const PolySystem s = ansatz_system(eq("y' - 1"), 1, 0);
  EXPECT_EQ(s.unknowns, (std::vector<std::string>{"u1", "u0"}));
  for (const auto& e : s.equations) {
    EXPECT_EQ(value_at(e, {Rat(1), Rat(7)}), 0);
  }
  bool rejects = false;
  for (const auto& e : s.equations) rejects |= value_at(e, {Rat(2), Rat(7)}) != 0;
  EXPECT_TRUE(rejects);
  // p = u0, q = t + v0 for t^2 y' + 1 (solution 1/t): u0 = 1, v0 = 0
  const PolySystem r = ansatz_system(eq("t^2*y' + 1"), 0, 1);
  EXPECT_EQ(r.unknowns, (std::vector<std::string>{"u0", "v0"}));
  for (const auto& e : r.equations) EXPECT_EQ(value_at(e, {Rat(1), Rat(0)}), 0);
  EXPECT_THROW(ansatz_system(eq("y' - 1"), 0, 0), DomainError);
}

TEST(GroebnerSolve, Examples) {
  const SystemSolution a = groebner_solve({{"a", "b"}, {x(1) * x(1) - k(1), x(0) * x(1)}});
  ASSERT_EQ(a.kind, DimensionKind::ZeroDim);
  auto pts = a.points;
  std::sort(pts.begin(), pts.end());
  EXPECT_EQ(pts, (std::vector<std::vector<Rat>>{{Rat(0), Rat(-1)}, {Rat(0), Rat(1)}}));

  const SystemSolution b = groebner_solve({{"a", "b"}, {x(0)}});
  EXPECT_EQ(b.kind, DimensionKind::PositiveDim);
  EXPECT_EQ(b.free_unknowns, std::vector<std::size_t>{1});

  const SystemSolution c = groebner_solve({{"a"}, {x(0) * x(0) + k(1)}});
  EXPECT_EQ(c.kind, DimensionKind::ZeroDim);
  EXPECT_TRUE(c.points.empty());

  const SystemSolution d = groebner_solve({{"a"}, {x(0) - k(1), x(0) - k(2)}});
  EXPECT_EQ(d.kind, DimensionKind::ZeroDim);
  EXPECT_TRUE(d.points.empty());
}

TEST(GroebnerSolve, PlantedPointsAreRecovered) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> v(-4, 4);
  for (int trial = 0; trial < 30; ++trial) {
    const std::vector<Rat> p{Rat(v(rng)), Rat(v(rng)), Rat(v(rng))};
    // the lines through p along the three axes, cut by two random quadrics vanishing at p
    std::vector<QPoly> eqs;
    for (int j = 0; j < 3; ++j) {
      QPoly e;
      for (std::size_t i = 0; i < 3; ++i) {
        const QPoly d = x(i) - QPoly::constant(p[i]);
        e += QPoly::constant(Rat(v(rng))) * d * (j == 2 ? d : QPoly::constant(Rat(1)));
      }
      eqs.push_back(e + x(static_cast<std::size_t>(j)) - QPoly::constant(p[static_cast<std::size_t>(j)]));
    }
    const SystemSolution s = groebner_solve({{"a", "b", "c"}, eqs});
    ASSERT_NE(s.kind, DimensionKind::BudgetExceeded);
    if (s.kind != DimensionKind::ZeroDim) continue;
    EXPECT_NE(std::find(s.points.begin(), s.points.end(), p), s.points.end());
    for (const auto& pt : s.points)
      for (const auto& e : eqs) EXPECT_EQ(value_at(e, pt), 0);
  }
}

TEST(GroebnerBasis, Membership) {
  StepBudget budget(1'000'000);
  const std::vector<ZPoly> gens{primitive_part(x(1) * x(1) - k(1)), primitive_part(x(0) * x(1))};
  const GroebnerBasis gb = groebner_basis(gens, {}, budget);
  ASSERT_TRUE(gb.complete);
  EXPECT_TRUE(reduces_to_zero(primitive_part(x(0) * x(1) * x(1) + (x(1) * x(1) - k(1)) * x(0) * k(3)), gb));
  EXPECT_TRUE(reduces_to_zero(primitive_part(x(0)), gb));  // x0 = x0 (x1^2) - x1 (x0 x1) up to sign
  EXPECT_FALSE(reduces_to_zero(primitive_part(x(1) - k(1)), gb));
}

TEST(Verify, Examples) {
  EXPECT_TRUE(verify_solution(eq("y' - 1"), RatFunc::t() + RatFunc(3)));
  EXPECT_FALSE(verify_solution(eq("y' - 1"), RatFunc::t() * RatFunc::t()));
  EXPECT_TRUE(verify_solution(eq("t^2*y' - 1"), frac(poly({-1}), poly({0, 1}))));
  EXPECT_TRUE(verify_solution(eq("y*y' - t"), -RatFunc::t()));
  EXPECT_TRUE(verify_solution(eq("y' + y^2 - y"), RatFunc(1)));
}

TEST(FindRationalSolutions, Examples) {
  const SolutionSet a = find_rational_solutions(eq("y*y' - t"), LazyMagnitude::exact(Integer(3)), 25);
  EXPECT_EQ(a.rational_solutions, (std::vector<RatFunc>{RatFunc::t(), -RatFunc::t()}));
  EXPECT_EQ(a.effective_bound, 3);
  EXPECT_FALSE(a.truncated);

  const SolutionSet b = find_rational_solutions(eq("y' - 1"), std::nullopt, 2);
  ASSERT_EQ(b.families.size(), 1u);
  EXPECT_TRUE(b.families[0].parametrized);
  EXPECT_TRUE(b.families[0].contains(RatFunc::t() + RatFunc(7)));
  EXPECT_FALSE(b.families[0].contains(RatFunc::t() * RatFunc(2)));
  EXPECT_TRUE(b.truncated);

  const SolutionSet c = find_rational_solutions(eq("t*y' - 2*y"), std::nullopt, 3);
  bool has_family = false;
  for (const auto& fam : c.families) has_family |= fam.contains(RatFunc::t() * RatFunc::t() * RatFunc(5));
  EXPECT_TRUE(has_family);

  const SolutionSet d = find_rational_solutions(eq("y'^2 - 4*y"), std::nullopt, 2);
  ASSERT_FALSE(d.families.empty());
  for (const auto& fam : d.families) EXPECT_TRUE(verify_solution(eq("y'^2 - 4*y"), fam.representative));

  EXPECT_THROW(find_rational_solutions(eq("y - t"), std::nullopt, 2), OrderError);
  EXPECT_THROW(find_rational_solutions(eq("y' - 1"), std::nullopt, -1), DomainError);
}

TEST(FindRationalSolutions, SoundAndCompleteOnPlantedEquations) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 15; ++i) {
    const RatFunc r = testgen::random_ratfunc_of_degree(rng, 1 + i % 2, 3);
    const DiffPoly f = normalize(testgen::plant_equation({r, {1, 1, 1}, static_cast<std::uint64_t>(i)}));
    const SolutionSet s = find_rational_solutions(f, std::nullopt, 3);
    for (const auto& sol : s.rational_solutions) EXPECT_TRUE(verify_solution(f, sol)) << to_string(f);
    for (const auto& fam : s.families) EXPECT_TRUE(verify_solution(f, fam.representative)) << to_string(f);
    if (!s.budget_exhausted) {
      EXPECT_TRUE(found(s, r)) << to_string(f) << " planted " << to_string(r);
    }
  }
}

TEST(FindRationalSolutions, RespectsTheBound) {
  for (const char* text : {"y*y' - t", "y' - y^2 - 1", "t*y'^2 - y^3 + 1", "y'^2 + t*y^5 - 1"}) {
    const DiffPoly f = normalize(eq(text));
    const Classification c = classify(f);
    if (c.applicable.empty()) continue;
    const BestBound bb = best_bound(f, c);
    const SolutionSet s = find_rational_solutions(f, bb.value, 6);
    if (bb.value.is_exact() && bb.value.exact_value() <= 6) {
      EXPECT_FALSE(s.truncated) << text;
      EXPECT_EQ(s.effective_bound, bb.value.exact_value().get_si()) << text;
    } else {
      EXPECT_TRUE(s.truncated) << text;
      EXPECT_EQ(s.effective_bound, 6) << text;
    }
    for (const auto& sol : s.rational_solutions) EXPECT_LE(ratfunc_degree(sol), s.effective_bound) << text;
  }
}
