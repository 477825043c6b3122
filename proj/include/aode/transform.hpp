#pragma once

#include <string>
#include <vector>

#include "aode/bounds.hpp"
#include "aode/diffpoly.hpp"
#include "aode/heights.hpp"

namespace aode {

/// Change of variable y = (c z + 1)/z (ShiftInvert) or y = 1/z (Invert); in both cases
/// y' = -z'/z^2.
struct MobiusMap {
  enum class Kind { ShiftInvert, Invert };
  Kind kind = Kind::Invert;
  Rat c = 0;  // only meaningful for ShiftInvert
};

inline std::string to_string(MobiusMap::Kind k) { return k == MobiusMap::Kind::Invert ? "invert" : "shift-invert"; }

/// Result of one invariant check on the transformed equation.
struct InvariantCheck {
  std::string name;
  bool holds = false;
};

struct ReductionResult {
  DiffPoly raw;         // z^(2n+l) f(y(z), y'(z, z')), before normalization
  DiffPoly normalized;  // primitive form of raw; variables print as (t, z, z')
  MobiusMap map;
  std::vector<InvariantCheck> checks;

  bool all_hold() const {
    for (const auto& c : checks)
      if (!c.holds) return false;
    return true;
  }
};

inline const std::array<std::string, 3> kTransformedNames = {"t", "z", "z'"};

/// Smallest non-negative integer c with a_0(c) != 0, where a_0 = f at y' = 0.
inline Rat choose_c(const DiffPoly& f) {
  require_nonzero(f, "choose_c");
  const auto a = y_prime_coefficients(f);
  if (a[0].is_zero()) throw DomainError("choose_c: a_0 vanishes identically, so y' divides f");
  for (long c = 0;; ++c)
    if (!eval_y(a[0], Rat(c)).is_zero()) return Rat(c);
}

namespace detail {

inline DiffPoly apply_mobius(const DiffPoly& f, const MobiusMap& map, unsigned clearing_power) {
  QPoly y_num = QPoly::constant(Rat(1));
  if (map.kind == MobiusMap::Kind::ShiftInvert) y_num += QPoly::var(kY).scaled(map.c);
  return substitute(f, {y_num, 1}, {-QPoly::var(kYP), 2}, clearing_power);
}

inline bool coefficient_gcd_is_one(const DiffPoly& g) {
  // normalize already removed the content in Q[t]; what is left is the part in z
  return detail::content_in(g, kYP, kY).degree() == 0;
}

}  // namespace detail

/// The reduction y = (cz+1)/z for equations of positive index. The transformed equation has
/// deg(g, z') = n and deg(g, z) = tdeg(g) = 2n + l.
inline ReductionResult mobius_reduce(const DiffPoly& f) {
  detail::require_order(f, "mobius_reduce");
  const int l = msindex(f);
  if (l <= 0) throw HypothesisError("positive index", "mobius_reduce needs a positive index, got " + std::to_string(l));
  const int n = deg_in(f, Var::YP);
  const int target = 2 * n + l;

  ReductionResult out;
  out.map = {MobiusMap::Kind::ShiftInvert, choose_c(f)};
  out.raw = detail::apply_mobius(f, out.map, static_cast<unsigned>(target));
  out.normalized = normalize(out.raw);
  const DiffPoly& g = out.normalized;

  out.checks.push_back({"deg(g,z') = n", deg_in(g, Var::YP) == n});
  out.checks.push_back({"deg(g,z) = 2n+l", deg_in(g, Var::Y) == target});
  out.checks.push_back({"tdeg(g) = 2n+l", tdeg_yy(g) == target});
  out.checks.push_back({"gcd(b_0..b_n) = 1", detail::coefficient_gcd_is_one(g)});
  const auto b = y_prime_coefficients(g);
  bool lead_at_zero = true;
  for (int i0 : msindex_attainers(f)) {
    const auto idx = static_cast<std::size_t>(i0);
    if (idx >= b.size() || b[idx].is_zero() || b[idx].coeff(0).is_zero()) lead_at_zero = false;
  }
  out.checks.push_back({"b_i0(0) != 0", lead_at_zero});
  out.checks.push_back({"h(g) <= h(f)", height_diffpoly(g) <= height_diffpoly(f)});
  return out;
}

/// The reduction y = 1/z under the separated leading coefficient hypotheses. The transformed
/// equation is alpha (-z')^n plus lower terms in z' and satisfies the weighted degree property
/// deg(b_i) n + i (2n + l) <= (2n + l) n.
inline ReductionResult invert_reduce(const DiffPoly& f) {
  if (auto v = separated_leading_violation(f)) throw HypothesisError(*v, "invert_reduce: " + *v + " fails");
  const int l = msindex(f);
  const int n = deg_in(f, Var::YP);
  const int target = 2 * n + l;

  ReductionResult out;
  out.map = {MobiusMap::Kind::Invert, 0};
  out.raw = detail::apply_mobius(f, out.map, static_cast<unsigned>(target));
  out.normalized = normalize(out.raw);
  const DiffPoly& g = out.normalized;
  const auto b = y_prime_coefficients(g);

  out.checks.push_back({"deg(g,z') = n", deg_in(g, Var::YP) == n});
  out.checks.push_back({"deg(g,z) = 2n+l", deg_in(g, Var::Y) == target});
  bool weighted = true;
  for (int i = 0; i < n; ++i) {
    const auto& bi = b[static_cast<std::size_t>(i)];
    if (!bi.is_zero() && bi.degree() * n + i * target > target * n) weighted = false;
  }
  out.checks.push_back({"deg(b_i) n + i (2n+l) <= (2n+l) n", weighted});
  // the coefficient of z'^n in the raw image is (-1)^n alpha where a_n = alpha y^l
  const auto raw_b = y_prime_coefficients(out.raw);
  const RatFunc alpha = y_prime_coefficients(f).back().coeff(l);
  const RatFunc expected = n % 2 == 0 ? alpha : -alpha;
  const bool lead_ok = raw_b.back().degree() == 0 && raw_b.back().coeff(0) == expected;
  out.checks.push_back({"coefficient of z'^n = alpha (-1)^n", lead_ok});
  out.checks.push_back({"h(g) = h(f)", height_diffpoly(g) == height_diffpoly(f)});
  return out;
}

/// Maps a solution r of the transformed equation back to a solution of the original one.
inline RatFunc pullback_solution(const MobiusMap& map, const RatFunc& r) {
  if (r.is_zero()) throw DomainError("pullback_solution: z = 0 has no preimage");
  if (map.kind == MobiusMap::Kind::Invert) return ratfunc_mobius(r, 0, 1, 1, 0);
  return ratfunc_mobius(r, map.c, 1, 1, 0);
}

}  // namespace aode
