#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "aode/diffpoly.hpp"
#include "aode/ratfunc.hpp"

namespace aode::testgen {

/// Partial degree caps for a random differential polynomial.
struct DegreeCaps {
  int t = 1;
  int y = 1;
  int yp = 1;
};

struct PlantSpec {
  RatFunc solution;                   // non-constant, in lowest terms
  DegreeCaps multiplier_degrees{};    // caps for both random cofactors
  std::uint64_t seed = 0;
};

inline Rat random_rat(std::mt19937_64& rng, long range = 5, long max_den = 1) {
  std::uniform_int_distribution<long> num(-range, range), den(1, max_den);
  return make_rat(num(rng), den(rng));
}

inline Rat random_nonzero_rat(std::mt19937_64& rng, long range = 5, long max_den = 1) {
  for (;;) {
    Rat r = random_rat(rng, range, max_den);
    if (sgn(r) != 0) return r;
  }
}

/// Random polynomial of exact degree `degree` with small rational coefficients.
inline UniPoly random_unipoly(std::mt19937_64& rng, int degree, long range = 5, long max_den = 1) {
  std::vector<Rat> c(static_cast<std::size_t>(degree) + 1);
  for (auto& x : c) x = random_rat(rng, range, max_den);
  c.back() = random_nonzero_rat(rng, range, max_den);
  return UniPoly(std::move(c));
}

/// Random rational function with numerator and denominator degrees at most max_degree; the result
/// is reduced, so its degree may come out lower.
inline RatFunc random_ratfunc(std::mt19937_64& rng, int max_degree, long range = 5) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  UniPoly num = random_unipoly(rng, deg(rng), range);
  UniPoly den = random_unipoly(rng, deg(rng), range).monic();
  return RatFunc(std::move(num), std::move(den));
}

/// Random non-constant rational function of degree exactly `degree`.
inline RatFunc random_ratfunc_of_degree(std::mt19937_64& rng, int degree, long range = 5) {
  for (;;) {
    RatFunc r = random_ratfunc(rng, degree, range);
    if (!r.is_constant() && r.degree() == degree) return r;
  }
}

/// Random sparse differential polynomial within the caps; every monomial is kept with
/// probability one half.
inline DiffPoly random_diffpoly(std::mt19937_64& rng, const DegreeCaps& caps, long range = 3) {
  std::map<DiffPoly::Exponents, Rat> terms;
  std::bernoulli_distribution keep(0.5);
  for (int i = 0; i <= caps.t; ++i)
    for (int j = 0; j <= caps.y; ++j)
      for (int k = 0; k <= caps.yp; ++k)
        if (keep(rng)) terms[{i, j, k}] = random_rat(rng, range);
  return DiffPoly::from_terms(terms);
}

/// f = A (q^2 y' - (p'q - pq')) + B (q y - p) for r = p/q, so that r solves f.
inline DiffPoly plant_with(const RatFunc& r, const DiffPoly& a, const DiffPoly& b) {
  auto lift = [](const UniPoly& u) { return DiffPoly(from_univariate(u, kT)); };
  const UniPoly& p = r.num();
  const UniPoly& q = r.den();
  const DiffPoly derivative_part = lift(q * q) * DiffPoly::yp() - lift(p.derivative() * q - p * q.derivative());
  const DiffPoly value_part = lift(q) * DiffPoly::y() - lift(p);
  return a * derivative_part + b * value_part;
}

/// Seeded planted equation; cofactors are redrawn (up to 64 times) when f vanishes or is free of
/// y', and the last resort is A = 1, B = 0.
inline DiffPoly plant_equation(const PlantSpec& spec) {
  if (spec.solution.is_constant()) throw DomainError("plant_equation: the planted solution must be non-constant");
  std::mt19937_64 rng(spec.seed);
  for (int attempt = 0; attempt < 64; ++attempt) {
    DiffPoly a = random_diffpoly(rng, spec.multiplier_degrees);
    DiffPoly b = random_diffpoly(rng, spec.multiplier_degrees);
    DiffPoly f = plant_with(spec.solution, a, b);
    if (!f.is_zero() && f.poly().uses_var(kYP)) return f;
  }
  return plant_with(spec.solution, DiffPoly::constant(1), DiffPoly{});
}

/// Random f = sum a_i(t, y) y'^i with deg(f, y') = n, msindex exactly ell and coefficients of
/// t-degree at most hmax (so h(f) <= hmax). The constant term a_0 is never zero.
inline DiffPoly random_with_msindex(int n, int ell, int hmax, std::uint64_t seed) {
  if (n < 1 || ell < 1 || hmax < 0) throw DomainError("random_with_msindex: need n >= 1, ell >= 1, hmax >= 0");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution keep(0.5);
  std::uniform_int_distribution<int> pick(0, n);
  auto random_t_poly = [&](bool nonzero) {
    std::vector<Rat> c(static_cast<std::size_t>(hmax) + 1);
    for (auto& x : c) x = keep(rng) ? random_rat(rng, 4) : Rat(0);
    if (nonzero && std::all_of(c.begin(), c.end(), [](const Rat& x) { return sgn(x) == 0; }))
      c[std::uniform_int_distribution<std::size_t>(0, c.size() - 1)(rng)] = random_nonzero_rat(rng, 4);
    return UniPoly(std::move(c));
  };
  const int attainer = pick(rng);
  std::map<std::pair<int, int>, UniPoly> coeffs;
  for (int i = 0; i <= n; ++i) {
    const int cap = ell + 2 * (n - i);
    for (int j = 0; j <= cap; ++j) {
      const bool forced = (i == attainer && j == cap) || (i == n && j == 0 && n != attainer) || (i == 0 && j == 0);
      if (!forced && !keep(rng)) continue;
      UniPoly u = random_t_poly(forced);
      if (!u.is_zero()) coeffs[{j, i}] = std::move(u);
    }
  }
  return from_t_coefficients(coeffs);
}

}  // namespace aode::testgen
