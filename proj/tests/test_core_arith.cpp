// Exact numbers, polynomials in t and rational functions.

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "support.hpp"

using namespace aode;
using aode::test::frac;
using aode::test::poly;

namespace {

// Euclid's algorithm written out on coefficient vectors, independent of UPoly::gcd.
std::vector<Rat> naive_gcd(std::vector<Rat> a, std::vector<Rat> b) {
  auto trim = [](std::vector<Rat>& v) {
    while (!v.empty() && sgn(v.back()) == 0) v.pop_back();
  };
  trim(a);
  trim(b);
  while (!b.empty()) {
    while (a.size() >= b.size() && !a.empty()) {
      const Rat factor = a.back() / b.back();
      const std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= factor * b[i];
      trim(a);
    }
    std::swap(a, b);
  }
  if (!a.empty()) {
    const Rat lead = a.back();
    for (auto& x : a) x /= lead;
  }
  return a;
}

bool divides(const UniPoly& d, const UniPoly& p) { return UniPoly::divrem(p, d).second.is_zero(); }

}  // namespace

TEST(Rational, CanonicalForm) {
  const Rat r = make_rat(6, -4);
  EXPECT_EQ(r.get_num(), -3);
  EXPECT_EQ(r.get_den(), 2);
  EXPECT_THROW(make_rat(1, 0), DomainError);
}

TEST(UniPolyGcd, Examples) {
  EXPECT_EQ(UniPoly::gcd(poly({-1, 0, 1}), poly({-1, 1})), poly({-1, 1}));
  EXPECT_EQ(UniPoly::gcd(poly({0, 1}), poly({1})), poly({1}));
  EXPECT_EQ(UniPoly::gcd(poly({0, 1, 0, 1}), poly({1, 0, 1})), poly({1, 0, 1}));
  EXPECT_TRUE(UniPoly::gcd(UniPoly(), UniPoly()).is_zero());
}

TEST(UniPolyGcd, PlantedCommonFactorMatchesNaiveEuclid) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const UniPoly common = testgen::random_unipoly(rng, static_cast<int>(rng() % 4));
    const UniPoly a = common * testgen::random_unipoly(rng, static_cast<int>(rng() % 5));
    const UniPoly b = common * testgen::random_unipoly(rng, static_cast<int>(rng() % 5));
    if (a.is_zero() || b.is_zero()) continue;
    const UniPoly g = UniPoly::gcd(a, b);
    EXPECT_EQ(g.coeffs(), naive_gcd(a.coeffs(), b.coeffs()));
    EXPECT_TRUE(divides(g, a));
    EXPECT_TRUE(divides(g, b));
    if (!common.is_zero()) {
      EXPECT_TRUE(divides(common, g));
    }
  }
}

TEST(RatFunc, Degree) {
  EXPECT_EQ(ratfunc_degree(RatFunc(aode::test::t_pow(7))), 7);
  EXPECT_EQ(ratfunc_degree(frac(poly({1, 0, 0, 1}), poly({0, 1}))), 3);
  EXPECT_EQ(ratfunc_degree(RatFunc(5)), 0);
}

TEST(RatFunc, ReducedWithMonicDenominator) {
  const RatFunc r = frac(poly({-2, 0, 2}), poly({-2, 2}));  // (2t^2 - 2)/(2t - 2) = t + 1
  EXPECT_EQ(r.num(), poly({1, 1}));
  EXPECT_EQ(r.den(), poly({1}));
  const RatFunc s = frac(poly({3}), poly({0, 2}));  // 3/(2t) = (3/2)/t
  EXPECT_EQ(s.den(), poly({0, 1}));
  EXPECT_EQ(s.num(), UniPoly::constant(make_rat(3, 2)));
}

TEST(RatFunc, Derivative) {
  EXPECT_EQ(ratfunc_derivative(RatFunc(poly({0, 0, 1}))), RatFunc(poly({0, 2})));
  EXPECT_EQ(ratfunc_derivative(frac(poly({1}), poly({0, 1}))), frac(poly({-1}), poly({0, 0, 1})));
  EXPECT_EQ(ratfunc_derivative(frac(poly({1, 0, 1}), poly({0, 1}))), frac(poly({-1, 0, 1}), poly({0, 0, 1})));
}

TEST(RationalRoots, Examples) {
  EXPECT_EQ(rational_roots(poly({1, 0, 0, 1})), std::vector<Rat>{Rat(-1)});
  EXPECT_TRUE(rational_roots(poly({1, 0, 1})).empty());
  auto roots = rational_roots(poly({-1, -1, 2}));
  std::sort(roots.begin(), roots.end());
  EXPECT_EQ(roots, (std::vector<Rat>{make_rat(-1, 2), Rat(1)}));
  EXPECT_THROW(rational_roots(UniPoly()), DomainError);
}

TEST(RationalRoots, PlantedRootsAreFound) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> num(-30, 30), den(1, 12);
  for (int i = 0; i < 100; ++i) {
    std::vector<Rat> planted;
    UniPoly p = poly({1, 0, 1});  // no rational roots of its own
    for (int k = 0; k < 3; ++k) {
      planted.push_back(make_rat(num(rng), den(rng)));
      p = p * UniPoly({-planted.back(), Rat(1)});
    }
    std::sort(planted.begin(), planted.end());
    planted.erase(std::unique(planted.begin(), planted.end()), planted.end());
    auto roots = rational_roots(p);
    std::sort(roots.begin(), roots.end());
    EXPECT_EQ(roots, planted);
  }
}

TEST(Factor, ProductOfIrreduciblesIsRecovered) {
  const UniPoly a = poly({1, 0, 1}), b = poly({-2, 0, 0, 1}), c = poly({3, 1});
  const auto factors = factor_over_q(a * a * b * c);
  int total = 0;
  UniPoly product = UniPoly::one();
  for (const auto& f : factors) {
    EXPECT_TRUE(is_irreducible_over_q(f.poly));
    total += f.multiplicity;
    product = product * f.poly.pow(static_cast<unsigned>(f.multiplicity));
  }
  EXPECT_EQ(total, 4);
  EXPECT_EQ(product.monic(), (a * a * b * c).monic());
}

TEST(Mobius, Examples) {
  const RatFunc t = RatFunc::t();
  EXPECT_EQ(ratfunc_mobius(t, 0, 1, 1, 0), frac(poly({1}), poly({0, 1})));
  const RatFunc shifted = ratfunc_mobius(t, 4, 1, 1, 0);
  EXPECT_EQ(shifted, frac(poly({1, 4}), poly({0, 1})));
  EXPECT_EQ(ratfunc_degree(shifted), 1);
  EXPECT_EQ(ratfunc_mobius(RatFunc(poly({1, 0, 1})), 1, 0, 0, 1), RatFunc(poly({1, 0, 1})));
  EXPECT_THROW(ratfunc_mobius(t, 1, 2, 2, 4), DomainError);
  EXPECT_THROW(ratfunc_mobius(RatFunc(2), 1, 0, 1, -2), DomainError);
}

TEST(Mobius, DegreePreservedAndInverseRoundTrip) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    const RatFunc r = aode::test::random_ratfunc(rng, 1 + static_cast<int>(rng() % 8));
    const auto c = aode::test::random_mobius(rng);
    if ((r.num().scaled(c[2]) + r.den().scaled(c[3])).is_zero()) continue;
    const RatFunc image = ratfunc_mobius(r, c[0], c[1], c[2], c[3]);
    EXPECT_EQ(ratfunc_degree(image), ratfunc_degree(r));
    // the inverse of (a r + b)/(c r + d) is (d s - b)/(-c s + a)
    EXPECT_EQ(ratfunc_mobius(image, c[3], -c[1], -c[2], c[0]), r);
  }
}

TEST(Derivative, DegreeWindow) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 500; ++i) {
    const RatFunc r = aode::test::random_ratfunc(rng, 1 + static_cast<int>(rng() % 8));
    const int d = ratfunc_degree(ratfunc_derivative(r));
    EXPECT_LE(ratfunc_degree(r) - 1, d);
    EXPECT_LE(d, 2 * ratfunc_degree(r));
  }
}
