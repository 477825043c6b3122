// Acceptance run: one PASS or FAIL line per criterion, exit status 1 when any fails.

#include <mpfr.h>

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "support.hpp"

using namespace aode;
using aode::test::eq;
using aode::test::frac;
using aode::test::poly;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream why;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) why << what;
    pass = pass && ok;
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

bool run_criterion(int number, const std::string& title, double time_limit, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto start = Clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  const double elapsed = seconds_since(start);
  if (time_limit > 0) o.require(elapsed < time_limit, "took " + std::to_string(elapsed) + " s");
  std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << number << ": " << title << " (" << std::fixed
            << std::setprecision(2) << elapsed << " s)";
  if (!o.pass) std::cout << "  " << o.why.str();
  std::cout << std::endl;
  return o.pass;
}

bool exact_bound_is(const DiffPoly& f, long expected) {
  const BestBound b = best_bound(f);
  return b.value.is_exact() && b.value.exact_value() == expected;
}

// Digit count of 4^(4^15) from directed-rounding evaluation of 4^15 log10(4), raising the
// precision until the lower and upper evaluations agree on the integer part.
long oracle_digit_count() {
  for (mpfr_prec_t prec = 32;; prec *= 2) {
    mpfr_t lo, hi;
    mpfr_inits2(prec, lo, hi, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_ui(lo, 4, MPFR_RNDD);
    mpfr_log10(lo, lo, MPFR_RNDD);
    mpfr_mul_ui(lo, lo, 1073741824ul, MPFR_RNDD);
    mpfr_set_ui(hi, 4, MPFR_RNDU);
    mpfr_log10(hi, hi, MPFR_RNDU);
    mpfr_mul_ui(hi, hi, 1073741824ul, MPFR_RNDU);
    mpfr_floor(lo, lo);
    mpfr_floor(hi, hi);
    const long a = mpfr_get_si(lo, MPFR_RNDD), b = mpfr_get_si(hi, MPFR_RNDD);
    mpfr_clears(lo, hi, static_cast<mpfr_ptr>(nullptr));
    if (a == b) return a + 1;
  }
}

}  // namespace

int main() {
  int failures = 0;
  auto record = [&](bool ok) { failures += ok ? 0 : 1; };

  record(run_criterion(1, "y*y' + y^3 + t has bound 3 and no rational solutions", 5, [](Outcome& o) {
    const DiffPoly f = normalize(eq("y*y' + y^3 + t"));
    o.require(exact_bound_is(f, 3), "bound is not 3");
    const SolutionSet s = find_rational_solutions(f, LazyMagnitude::exact(Integer(3)), 25);
    o.require(s.rational_solutions.empty() && s.families.empty(), "unexpected solutions");
    o.require(s.constants.variety.degree() == 0 && !s.constants.variety.is_zero(), "constant variety is not 1");
    o.require(!s.truncated && !s.budget_exhausted && !s.incomplete, "search was not complete");
  }));

  record(run_criterion(2, "t*y*y' + y^3 + 1 has bound 3 and only the constant -1", 5, [](Outcome& o) {
    const DiffPoly f = normalize(eq("t*y*y' + y^3 + 1"));
    o.require(exact_bound_is(f, 3), "bound is not 3");
    const SolutionSet s = find_rational_solutions(f, LazyMagnitude::exact(Integer(3)), 25);
    o.require(s.rational_solutions.empty() && s.families.empty(), "unexpected non-constant solutions");
    o.require(s.constants.variety == poly({1, 0, 0, 1}), "constant variety is not c^3 + 1");
    o.require(s.constants.rational_roots == std::vector<Rat>{Rat(-1)}, "rational root is not -1");
    o.require(!s.budget_exhausted && !s.incomplete, "search was not complete");
  }));

  record(run_criterion(3, "y*y' - t has bound 3 and solutions t and -t", 5, [](Outcome& o) {
    const DiffPoly f = normalize(eq("y*y' - t"));
    o.require(exact_bound_is(f, 3), "bound is not 3");
    const SolutionSet s = find_rational_solutions(f, LazyMagnitude::exact(Integer(3)), 25);
    o.require(s.rational_solutions == std::vector<RatFunc>{RatFunc::t(), -RatFunc::t()}, "solutions are not {t, -t}");
    for (const auto& r : s.rational_solutions) o.require(verify_solution(f, r), "a solution does not verify");
    o.require(s.families.empty() && !s.budget_exhausted && !s.incomplete, "search was not complete");
  }));

  record(run_criterion(4, "height of ((t^2+1)/t^2 : (t^3+1)/t) is 4", 0, [](Outcome& o) {
    const RatFunc x = frac(poly({1, 0, 1}), poly({0, 0, 1}));
    const RatFunc y = frac(poly({1, 0, 0, 1}), poly({0, 1}));
    o.require(height_point({x, y}).value == 4, "height_point differs");
    o.require(height_sum_oracle({x, y}).value == 4, "height_sum_oracle differs");
  }));

  record(run_criterion(5, "classification of the two non maximally comparable equations", 0, [](Outcome& o) {
    const Classification first = classify(normalize(eq("y'^3 + y^2*y'^2 + t")));
    o.require(!first.maximally_comparable, "first equation reported maximally comparable");
    o.require(std::find(first.applicable.begin(), first.applicable.end(), BoundKind::GeneralSmallY) !=
                  first.applicable.end(),
              "deg_y < deg_y' bound not applicable");
    for (int n = 1; n <= 2; ++n)
      for (int l = 1; l <= 3; ++l) {
        const std::string text = "t*y^" + std::to_string(l) + "*y'^" + std::to_string(n) + " + 2*y^" +
                                 std::to_string(2 * n + l) + " + t + 1";
        const Classification c = classify(normalize(eq(text)));
        o.require(!c.maximally_comparable, text + " reported maximally comparable");
        o.require(c.index == l, text + " has the wrong msindex");
      }
  }));

  record(run_criterion(6, "t*y' - 3*y has no bound and the family c*t^3", 0, [](Outcome& o) {
    const DiffPoly f = normalize(eq("t*y' - 3*y"));
    bool thrown = false;
    try {
      best_bound(f);
    } catch (const NoApplicableBound&) {
      thrown = true;
    }
    o.require(thrown, "a bound was reported");
    const SolutionSet s = find_rational_solutions(f, std::nullopt, 3);
    bool family = false;
    for (const auto& fam : s.families) {
      o.require(verify_solution(f, fam.representative), "representative does not verify");
      family = family || (fam.parametrized && fam.contains(RatFunc(aode::test::t_pow(3)) * RatFunc(5)) &&
                          fam.contains(RatFunc(aode::test::t_pow(3))));
    }
    o.require(family, "family c*t^3 not reported");
  }));

  record(run_criterion(7, "autonomous y*y' + y^3 + 1 has height 0 and bound 0", 0, [](Outcome& o) {
    const DiffPoly f = normalize(eq("y*y' + y^3 + 1"));
    o.require(height_diffpoly(f).value == 0, "height is not 0");
    o.require(exact_bound_is(f, 0), "bound is not 0");
    const SolutionSet s = find_rational_solutions(f, LazyMagnitude::exact(Integer(0)), 25);
    o.require(s.rational_solutions.empty() && s.families.empty(), "non-constant solutions reported");
  }));

  record(run_criterion(8, "Mobius images keep the degree, derivatives stay in the window (500 cases)", 10,
                       [](Outcome& o) {
                         std::mt19937_64 rng(8);
                         int cases = 0;
                         while (cases < 500) {
                           const RatFunc r = aode::test::random_ratfunc(rng, 1 + static_cast<int>(rng() % 8));
                           const auto c = aode::test::random_mobius(rng);
                           if ((r.num().scaled(c[2]) + r.den().scaled(c[3])).is_zero()) continue;
                           ++cases;
                           const int d = ratfunc_degree(r);
                           o.require(ratfunc_degree(ratfunc_mobius(r, c[0], c[1], c[2], c[3])) == d,
                                     "degree changed for " + to_string(r));
                           const int dd = ratfunc_degree(ratfunc_derivative(r));
                           o.require(d - 1 <= dd && dd <= 2 * d, "derivative degree outside the window");
                         }
                       }));

  record(run_criterion(9, "height_point equals the sum over places (200 tuples)", 0, [](Outcome& o) {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 200; ++i) {
      const auto v = aode::test::random_tuple(rng);
      const std::span<const RatFunc> s(v);
      o.require(height_point(s).value == height_sum_oracle(s).value, "heights differ");
    }
  }));

  record(run_criterion(10, "height inequality on 100 planted curves", 0, [](Outcome& o) {
    std::mt19937_64 rng(10);
    for (int i = 0; i < 100; ++i) {
      const auto c = aode::test::planted_curve(rng);
      o.require(check_height_inequality(c.g, c.a, c.b), "inequality fails");
    }
  }));

  record(run_criterion(11, "transform invariants on 100 equations with prescribed index", 0, [](Outcome& o) {
    for (int i = 0; i < 100; ++i) {
      const int n = 1 + i % 3, l = 1 + (i / 3) % 3;
      const DiffPoly f = testgen::random_with_msindex(n, l, 2, static_cast<std::uint64_t>(1000 + i));
      const ReductionResult r = mobius_reduce(f);
      const DiffPoly& g = r.normalized;
      o.require(deg_in(g, Var::YP) == n, "deg(g, z') != n");
      o.require(deg_in(g, Var::Y) == 2 * n + l && tdeg_yy(g) == 2 * n + l, "deg(g, z) or tdeg(g) != 2n + l");
      o.require(detail::coefficient_gcd_is_one(g), "coefficients of g share a factor");
      o.require(height_diffpoly(g).value <= height_diffpoly(f).value, "h(g) > h(f)");
    }
  }));

  record(run_criterion(12, "planted solutions of degree <= 4 are recovered (50 equations)", 120, [](Outcome& o) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> degree(1, 4);
    for (int i = 0; i < 50; ++i) {
      const RatFunc r = testgen::random_ratfunc_of_degree(rng, degree(rng), 3);
      const DiffPoly f = testgen::plant_equation({r, {1, 1, 1}, static_cast<std::uint64_t>(i)});
      const SolutionSet s = find_rational_solutions(f, std::nullopt, 4);
      bool found = std::find(s.rational_solutions.begin(), s.rational_solutions.end(), r) != s.rational_solutions.end();
      for (const auto& fam : s.families) found = found || fam.contains(r);
      o.require(found, "missed " + to_string(r) + " in " + to_string(f));
    }
  }));

  record(run_criterion(13, "digit bracket of 4^(4^15) and tower comparisons", 0, [](Outcome& o) {
    const DiffPoly f = normalize(eq("t*y*y' + 1"));
    const LazyMagnitude b = bound_positive_index(f);
    o.require(!b.is_exact(), "bound was materialized");
    const auto tw = b.tower_value();
    o.require(tw.coeff == 1 && tw.base == 4 && tw.exponent == 1073741824 && tw.addend == 0, "tower is not 1*4^(4^15)");
    const DigitBracket d = b.digit_bracket();
    const long digits = oracle_digit_count();
    o.require(d.lo <= digits && digits <= d.hi, "bracket misses the digit count " + std::to_string(digits));
    o.require(d.hi - d.lo < 3, "bracket wider than 2");
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<long> base(2, 9), exponent(1, 10000), coeff(1, 50);
    for (int i = 0; i < 20; ++i) {
      const Integer c = coeff(rng), bs = base(rng), e = exponent(rng);
      const Integer value = c * ipow(bs, e.get_ui());
      const LazyMagnitude lazy = LazyMagnitude::tower(c, bs, e);
      for (const Integer& other : {Integer(value - 1), value, Integer(value + 1)}) {
        const auto order = compare(lazy, LazyMagnitude::exact(other));
        o.require(order.has_value() && *order == (cmp(value, other) <=> 0), "comparison disagrees with exponentiation");
      }
    }
  }));

  record(run_criterion(14, "no planted product is reported irreducible (100 products)", 0, [](Outcome& o) {
    std::mt19937_64 rng(14);
    auto factor = [&]() {
      for (;;) {
        const DiffPoly g = testgen::random_diffpoly(rng, {2, 1, 1});
        if (deg_in(g, Var::Y) + deg_in(g, Var::YP) > 0) return g;
      }
    };
    for (int i = 0; i < 100; ++i) {
      DiffPoly a = factor(), b = factor();
      if (deg_in(a, Var::YP) == 0 && deg_in(b, Var::YP) == 0) b = b * DiffPoly::yp() + DiffPoly::constant(1);
      const DiffPoly f = a * b;
      o.require(irreducibility_check(f, static_cast<std::uint64_t>(i)).status != IrreducibilityStatus::Irreducible,
                "product reported irreducible: " + to_string(f));
    }
  }));

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
