#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "aode/diffpoly.hpp"
#include "aode/heights.hpp"
#include "aode/lazy_magnitude.hpp"

namespace aode {

/// Which degree bound an estimate comes from.
enum class BoundKind {
  GeneralLargeY,     // deg_y > 2 deg_y', doubly exponential in rho
  GeneralSmallY,     // deg_y < deg_y', same shape plus (rho+1)^2
  PositiveIndex,     // positive index, tower in 2 rho
  NewtonLargeY,      // Newton polygon condition and deg_y > 2 deg_y'
  NewtonSmallY,      // Newton polygon condition and deg_y < deg_y'
  SeparatedLeading,  // leading coefficient alpha * y^l and y^l dividing the middle coefficients
};

inline std::string to_string(BoundKind k) {
  switch (k) {
    case BoundKind::GeneralLargeY: return "general-large-y";
    case BoundKind::GeneralSmallY: return "general-small-y";
    case BoundKind::PositiveIndex: return "positive-index";
    case BoundKind::NewtonLargeY: return "newton-large-y";
    case BoundKind::NewtonSmallY: return "newton-small-y";
    default: return "separated-leading";
  }
}

inline std::string describe(BoundKind k) {
  switch (k) {
    case BoundKind::GeneralLargeY: return "75*2^13*(rho+1)^(40(rho+1)^12+7)*h, deg_y > 2 deg_y'";
    case BoundKind::GeneralSmallY: return "75*2^13*(rho+1)^(40(rho+1)^12+7)*h + (rho+1)^2, deg_y < deg_y'";
    case BoundKind::PositiveIndex: return "h*(2 rho)^((2 rho)^15), positive index";
    case BoundKind::NewtonLargeY: return "m n h/(m - 2n), Newton polygon condition";
    case BoundKind::NewtonSmallY: return "(m n h + n)/(n - m), Newton polygon condition";
    default: return "n (2n + l) h / l, separated leading coefficient";
  }
}

/// Index l(f) = max over nonzero a_i of deg_y(a_i) - 2(n - i), where f = sum a_i y'^i.
inline int msindex(const DiffPoly& f) {
  require_nonzero(f, "msindex");
  const auto a = y_prime_coefficients(f);
  const int n = static_cast<int>(a.size()) - 1;
  if (n < 1) throw OrderError("msindex: the polynomial does not involve y'");
  int best = 0;
  bool first = true;
  for (int i = 0; i <= n; ++i) {
    if (a[static_cast<std::size_t>(i)].is_zero()) continue;
    const int v = a[static_cast<std::size_t>(i)].degree() - 2 * (n - i);
    best = first ? v : std::max(best, v);
    first = false;
  }
  return best;
}

/// Indices i attaining the index.
inline std::vector<int> msindex_attainers(const DiffPoly& f) {
  const int l = msindex(f);
  const auto a = y_prime_coefficients(f);
  const int n = static_cast<int>(a.size()) - 1;
  std::vector<int> out;
  for (int i = 0; i <= n; ++i)
    if (!a[static_cast<std::size_t>(i)].is_zero() && a[static_cast<std::size_t>(i)].degree() - 2 * (n - i) == l)
      out.push_back(i);
  return out;
}

/// Some support point (i0, j0) (y-exponent, y'-exponent) dominates every other (i, j) with
/// i0 + j0 >= i + j and i0 + 2 j0 > i + 2 j. Returns the dominating point.
inline std::optional<std::pair<int, int>> maximally_comparable_witness(const DiffPoly& f) {
  const auto s = support(f);
  for (const auto& p : s) {
    bool ok = true;
    for (const auto& q : s) {
      if (q == p) continue;
      if (!(p.first + p.second >= q.first + q.second && p.first + 2 * p.second > q.first + 2 * q.second)) {
        ok = false;
        break;
      }
    }
    if (ok) return p;
  }
  return std::nullopt;
}

inline bool is_maximally_comparable(const DiffPoly& f) {
  require_nonzero(f, "is_maximally_comparable");
  return maximally_comparable_witness(f).has_value();
}

/// Every support point (i, j) satisfies m j + n i <= m n with m = deg_y f and n = deg_y' f.
inline bool check_newton_condition(const DiffPoly& f) {
  require_nonzero(f, "check_newton_condition");
  const int m = deg_in(f, Var::Y), n = deg_in(f, Var::YP);
  if (m < 1 || n < 1) throw DomainError("check_newton_condition: needs positive degrees in y and y'");
  for (const auto& [i, j] : support(f))
    if (m * j + n * i > m * n) return false;
  return true;
}

namespace detail {

inline Integer height_integer(const DiffPoly& f) {
  const Rat h = height_diffpoly(f).value;
  return h.get_num();  // heights of polynomial equations are integers
}

}  // namespace detail

/// Doubly exponential bound for deg_y > 2 deg_y' or deg_y < deg_y'.
inline LazyMagnitude bound_general(const DiffPoly& f, long digit_threshold = kDefaultDigitThreshold) {
  detail::require_order(f, "bound_general");
  const int m = deg_in(f, Var::Y), n = deg_in(f, Var::YP);
  if (!(m > 2 * n || m < n))
    throw HypothesisError("degree condition", "bound_general needs deg_y > 2 deg_y' or deg_y < deg_y'");
  const Integer r1 = tdeg_yy(f) + 1;
  const Integer coeff = 75 * ipow(2, 13) * detail::height_integer(f);
  const Integer exponent = 40 * ipow(r1, 12) + 7;
  const Integer addend = m < n ? Integer(r1 * r1) : Integer(0);
  return LazyMagnitude::make(coeff, r1, exponent, addend, digit_threshold);
}

/// Tower bound h * (2 rho)^((2 rho)^15) for positive index.
inline LazyMagnitude bound_positive_index(const DiffPoly& f, long digit_threshold = kDefaultDigitThreshold) {
  detail::require_order(f, "bound_positive_index");
  if (msindex(f) <= 0) throw HypothesisError("positive index", "bound_positive_index needs a positive index");
  const int rho = tdeg_yy(f);
  if (rho < 2) throw HypothesisError("total degree at least 2", "bound_positive_index needs total degree >= 2");
  const Integer two_rho = 2 * rho;
  return LazyMagnitude::make(detail::height_integer(f), two_rho, ipow(two_rho, 15), 0, digit_threshold);
}

/// Degree bound C(rho, eps) * h used inside the general bound, with eps = 1/inverse_eps:
/// C = 75 * 2^13 * N^6 * (rho+1)^(40 (rho+1)^9 N^3) with N = inverse_eps.
inline LazyMagnitude bound_constant_with_epsilon(int rho, long inverse_eps, const Integer& height,
                                                 long digit_threshold = kDefaultDigitThreshold) {
  if (rho < 1 || inverse_eps < 1) throw DomainError("bound_constant_with_epsilon: rho >= 1 and N >= 1 required");
  const Integer r1 = rho + 1;
  const Integer n = inverse_eps;
  return LazyMagnitude::make(75 * ipow(2, 13) * ipow(n, 6) * height, r1, 40 * ipow(r1, 9) * ipow(n, 3), 0,
                             digit_threshold);
}

/// Linear bound under the Newton polygon condition; returned as an exact rational.
inline Rat bound_newton(const DiffPoly& f) {
  detail::require_order(f, "bound_newton");
  const int m = deg_in(f, Var::Y), n = deg_in(f, Var::YP);
  if (m < 1) throw HypothesisError("Newton polygon condition", "bound_newton needs deg_y >= 1");
  if (!check_newton_condition(f))
    throw HypothesisError("Newton polygon condition", "some support point lies above the Newton line");
  const Integer h = detail::height_integer(f);
  if (m > 2 * n) return make_rat(Integer(m * n * h), Integer(m - 2 * n));
  if (m < n) return make_rat(Integer(m * n * h + n), Integer(n - m));
  throw HypothesisError("degree condition", "bound_newton needs deg_y > 2 deg_y' or deg_y < deg_y'");
}

/// Name of the first violated hypothesis of the separated leading coefficient bound, if any.
inline std::optional<std::string> separated_leading_violation(const DiffPoly& f) {
  detail::require_order(f, "separated_leading_violation");
  const int l = msindex(f);
  if (l <= 0) return "positive index";
  const auto a = y_prime_coefficients(f);
  const std::size_t n = a.size() - 1;
  const YPoly& lead = a[n];
  for (int k = 0; k <= lead.degree(); ++k)
    if (!lead.coeff(k).is_zero() && k != l)
      return "leading coefficient alpha*y^l";
  for (std::size_t i = 1; i < n; ++i)
    if (!a[i].is_zero() && a[i].valuation() < l) return "y^l divides the middle coefficients";
  const YPoly& a0 = a[0];
  if (a0.is_zero() || a0.coeff(0).is_zero()) return "a_0(0) nonzero";
  return std::nullopt;
}

/// Linear bound n (2n + l) h / l for a separated leading coefficient.
inline Rat bound_separated_leading(const DiffPoly& f) {
  if (auto v = separated_leading_violation(f)) throw HypothesisError(*v, "bound_separated_leading: " + *v + " fails");
  const int n = deg_in(f, Var::YP), l = msindex(f);
  return make_rat(Integer(n * (2 * n + l)) * detail::height_integer(f), Integer(l));
}

/// Structural summary of an equation.
struct Classification {
  int deg_y = 0;
  int deg_yp = 0;
  int total_degree = 0;
  int index = 0;
  Integer height;
  bool maximally_comparable = false;
  std::optional<std::pair<int, int>> comparable_witness;
  std::optional<bool> newton_condition;  // unset when deg_y = 0
  IrreducibilityVerdict irreducibility;
  std::vector<BoundKind> applicable;
};

inline Classification classify(const DiffPoly& f, std::uint64_t seed = 0) {
  detail::require_order(f, "classify");
  Classification c;
  c.deg_y = f.poly().degree_in(kY);
  c.deg_yp = f.poly().degree_in(kYP);
  c.total_degree = tdeg_yy(f);
  c.index = msindex(f);
  c.height = detail::height_integer(f);
  c.comparable_witness = maximally_comparable_witness(f);
  c.maximally_comparable = c.comparable_witness.has_value();
  if (c.deg_y >= 1) c.newton_condition = check_newton_condition(f);
  c.irreducibility = irreducibility_check(f, seed);
  const bool large_y = c.deg_y > 2 * c.deg_yp, small_y = c.deg_y < c.deg_yp;
  if (large_y) c.applicable.push_back(BoundKind::GeneralLargeY);
  if (small_y) c.applicable.push_back(BoundKind::GeneralSmallY);
  if (c.index > 0 && c.total_degree >= 2) c.applicable.push_back(BoundKind::PositiveIndex);
  if (c.newton_condition.value_or(false) && large_y) c.applicable.push_back(BoundKind::NewtonLargeY);
  if (c.newton_condition.value_or(false) && small_y) c.applicable.push_back(BoundKind::NewtonSmallY);
  if (!separated_leading_violation(f)) c.applicable.push_back(BoundKind::SeparatedLeading);
  return c;
}

struct BoundEntry {
  BoundKind kind;
  LazyMagnitude value;       // floor of the bound
  std::optional<Rat> exact;  // the rational value for the linear bounds
};

struct BestBound {
  LazyMagnitude value;
  BoundKind kind;
  std::vector<BoundEntry> entries;  // every applicable bound, in classification order
  bool undecided = false;           // some comparison exceeded the digit threshold
};

inline BoundEntry evaluate_bound(const DiffPoly& f, BoundKind k, long digit_threshold = kDefaultDigitThreshold) {
  auto floor_of = [](const Rat& r) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return LazyMagnitude::exact(q);
  };
  switch (k) {
    case BoundKind::GeneralLargeY:
    case BoundKind::GeneralSmallY: return {k, bound_general(f, digit_threshold), std::nullopt};
    case BoundKind::PositiveIndex: return {k, bound_positive_index(f, digit_threshold), std::nullopt};
    case BoundKind::NewtonLargeY:
    case BoundKind::NewtonSmallY: {
      Rat r = bound_newton(f);
      return {k, floor_of(r), r};
    }
    default: {
      Rat r = bound_separated_leading(f);
      return {k, floor_of(r), r};
    }
  }
}

/// Minimum over every applicable bound. Throws NoApplicableBound when none applies.
inline BestBound best_bound(const DiffPoly& f, const Classification& c,
                            long digit_threshold = kDefaultDigitThreshold) {
  if (c.applicable.empty())
    throw NoApplicableBound("no degree bound applies (deg_y = " + std::to_string(c.deg_y) +
                            ", deg_y' = " + std::to_string(c.deg_yp) + ", index " + std::to_string(c.index) + ")");
  BestBound best;
  for (BoundKind k : c.applicable) best.entries.push_back(evaluate_bound(f, k, digit_threshold));
  std::size_t arg = 0;
  for (std::size_t i = 1; i < best.entries.size(); ++i) {
    auto cmp = compare(best.entries[i].value, best.entries[arg].value, digit_threshold);
    if (!cmp) {
      best.undecided = true;
      continue;
    }
    if (*cmp == std::strong_ordering::less) arg = i;
  }
  best.value = best.entries[arg].value;
  best.kind = best.entries[arg].kind;
  return best;
}

inline BestBound best_bound(const DiffPoly& f, long digit_threshold = kDefaultDigitThreshold) {
  return best_bound(f, classify(f), digit_threshold);
}

/// Coefficients of a polynomial g(x, y) over Q(t), keyed by (x-exponent, y-exponent).
using BivariateCoeffs = std::map<std::pair<int, int>, RatFunc>;

/// For g(a, b) = 0 with g satisfying the Newton polygon condition, checks
/// m h(a) - m n h(g) <= n h(b) <= m h(a) + m n h(g), m = deg_x g, n = deg_y g.
inline bool check_height_inequality(const BivariateCoeffs& g, const RatFunc& a, const RatFunc& b) {
  int m = 0, n = 0;
  RatFunc value;
  for (const auto& [ij, c] : g) {
    if (c.is_zero()) continue;
    m = std::max(m, ij.first);
    n = std::max(n, ij.second);
    value += c * a.pow(ij.first) * b.pow(ij.second);
  }
  if (m < 1 || n < 1) throw DomainError("check_height_inequality: g needs positive degree in both variables");
  if (!value.is_zero()) throw DomainError("check_height_inequality: (a, b) is not a zero of g");
  for (const auto& [ij, c] : g)
    if (!c.is_zero() && m * ij.second + n * ij.first > m * n)
      throw HypothesisError("Newton polygon condition", "check_height_inequality: Newton polygon condition fails");
  const Rat hg = height_diffpoly(g).value;
  const Rat lhs = m * height_ratfunc(a).value - m * n * hg;
  const Rat mid = n * height_ratfunc(b).value;
  const Rat rhs = m * height_ratfunc(a).value + m * n * hg;
  return lhs <= mid && mid <= rhs;
}

}  // namespace aode
