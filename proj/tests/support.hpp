#pragma once

// Small constructors shared by the test programs.

#include <algorithm>
#include <initializer_list>
#include <random>
#include <string_view>
#include <vector>

#include "aode/aode.hpp"

namespace aode::test {

inline DiffPoly eq(std::string_view text) { return parse_equation(text).parsed; }

/// Polynomial in t from integer coefficients, constant term first.
inline UniPoly poly(std::initializer_list<long> coeffs) {
  std::vector<Rat> c;
  for (long x : coeffs) c.emplace_back(x);
  return UniPoly(std::move(c));
}

inline RatFunc frac(const UniPoly& num, const UniPoly& den) { return RatFunc(num, den); }

inline UniPoly t_pow(unsigned e) { return UniPoly::monomial(Rat(1), e); }

/// Random nonzero rational function of degree exactly `degree`.
inline RatFunc random_ratfunc(std::mt19937_64& rng, int degree) {
  return testgen::random_ratfunc_of_degree(rng, degree, 5);
}

/// Random invertible Mobius coefficients with small entries.
inline std::array<Rat, 4> random_mobius(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> d(-5, 5);
  for (;;) {
    std::array<Rat, 4> c{Rat(d(rng)), Rat(d(rng)), Rat(d(rng)), Rat(d(rng))};
    if (sgn(Rat(c[0] * c[3] - c[1] * c[2])) != 0) return c;
  }
}

/// Random projective point over Q(t) with two to four coordinates, not all zero.
inline std::vector<RatFunc> random_tuple(std::mt19937_64& rng) {
  const std::size_t dim = 2 + rng() % 3;
  std::vector<RatFunc> out;
  for (std::size_t i = 0; i < dim; ++i) out.push_back(testgen::random_ratfunc(rng, static_cast<int>(rng() % 9)));
  if (std::all_of(out.begin(), out.end(), [](const RatFunc& a) { return a.is_zero(); })) out[0] = RatFunc(1);
  return out;
}

// A planted curve d(t) y - N(x, t) = 0 through (a, N(a)/d), which meets the Newton condition.
struct PlantedCurve {
  BivariateCoeffs g;
  RatFunc a, b;
};

inline PlantedCurve planted_curve(std::mt19937_64& rng) {
  const int m = 1 + static_cast<int>(rng() % 4);
  PlantedCurve c;
  RatFunc d;
  while (d.is_zero()) d = testgen::random_ratfunc(rng, 3);
  c.g[{0, 1}] = d;
  c.a = testgen::random_ratfunc(rng, 1 + static_cast<int>(rng() % 4));
  RatFunc value;
  for (int i = 0; i <= m; ++i) {
    RatFunc coeff = testgen::random_ratfunc(rng, 3);
    if (i == m)
      while (coeff.is_zero()) coeff = testgen::random_ratfunc(rng, 3);
    if (coeff.is_zero()) continue;
    c.g[{i, 0}] = -coeff;
    value += coeff * c.a.pow(i);
  }
  c.b = value / d;
  return c;
}

}  // namespace aode::test
