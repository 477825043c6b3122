#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "aode/diffpoly.hpp"
#include "aode/factor.hpp"
#include "aode/groebner.hpp"
#include "aode/lazy_magnitude.hpp"
#include "aode/modular.hpp"
#include "aode/ratfunc.hpp"

namespace aode {

/// f(r, r') == 0 exactly. With r = p/q and r' = w/q^2, w = p'q - pq', this checks that
/// q^E f(p/q, w/q^2) vanishes for E the largest j + 2k over the terms, in polynomial arithmetic.
inline bool verify_solution(const DiffPoly& f, const RatFunc& r) {
  const UniPoly& p = r.num();
  const UniPoly& q = r.den();
  const UniPoly w = p.derivative() * q - p * q.derivative();
  unsigned clearing = 0;
  for (const auto& tm : f.poly().terms()) clearing = std::max<unsigned>(clearing, tm.m.e[kY] + 2 * tm.m.e[kYP]);
  std::vector<UniPoly> ppow{UniPoly::one()}, wpow{UniPoly::one()}, qpow{UniPoly::one()};
  auto power = [](std::vector<UniPoly>& cache, const UniPoly& base, unsigned e) -> const UniPoly& {
    while (cache.size() <= e) cache.push_back(cache.back() * base);
    return cache[e];
  };
  UniPoly acc;
  for (const auto& tm : f.poly().terms()) {
    const unsigned j = tm.m.e[kY], k = tm.m.e[kYP];
    acc += (power(ppow, p, j) * power(wpow, w, k) * power(qpow, q, clearing - j - 2 * k))
               .shifted(tm.m.e[kT])
               .scaled(tm.c);
  }
  return acc.is_zero();
}

/// Constant solutions y = c: the polynomial whose roots are exactly the constants solving f
/// (zero when every constant does), and its rational roots.
struct ConstantSolutions {
  UniPoly variety;
  std::vector<Rat> rational_roots;

  bool every_constant_solves() const { return variety.is_zero(); }
};

inline ConstantSolutions constant_solutions(const DiffPoly& f) {
  require_nonzero(f, "constant_solutions");
  std::map<int, std::vector<Rat>> by_t;  // t-exponent -> coefficients in c
  for (const auto& tm : f.poly().terms()) {
    if (tm.m.e[kYP]) continue;
    auto& v = by_t[tm.m.e[kT]];
    if (v.size() <= tm.m.e[kY]) v.resize(tm.m.e[kY] + 1u);
    v[tm.m.e[kY]] += tm.c;
  }
  ConstantSolutions out;
  for (auto& [i, v] : by_t) out.variety = UniPoly::gcd(out.variety, UniPoly(std::move(v)));
  if (!out.variety.is_zero()) out.rational_roots = rational_roots(out.variety);
  return out;
}

/// Positions of the ansatz unknowns: p = sum u_i t^i (deg p <= dp), q = t^dq + sum v_i t^i,
/// ordered u_dp, ..., u_0, v_(dq-1), ..., v_0 after `offset` leading slots.
///
/// In division form (used when 0 < dq <= dp) the slots of u_dq..u_dp hold the quotient
/// s = sum s_j t^j of p by q and the slots of u_0..u_(dq-1) hold the remainder, so that
/// p = s q + remainder. The leading slot is the leading coefficient of p in both forms.
struct AnsatzLayout {
  int dp = 0;
  int dq = 0;
  std::size_t offset = 0;
  bool division_form = false;

  bool divides() const { return division_form && dq > 0 && dp >= dq; }

  std::size_t u(int i) const { return offset + static_cast<std::size_t>(dp - i); }
  std::size_t v(int i) const { return offset + static_cast<std::size_t>(dp + 1 + (dq - 1 - i)); }
  std::size_t unknown_count() const { return static_cast<std::size_t>(dp + 1 + dq); }
  std::size_t slot_count() const { return offset + unknown_count(); }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (int i = dp; i >= 0; --i) {
      if (!divides()) out.push_back("u" + std::to_string(i));
      else out.push_back(i >= dq ? "s" + std::to_string(i - dq) : "r" + std::to_string(i));
    }
    for (int i = dq - 1; i >= 0; --i) out.push_back("v" + std::to_string(i));
    return out;
  }
};

namespace detail::ansatz {

using TPoly = std::vector<QPoly>;  // coefficient of t^i

inline TPoly mul(const TPoly& a, const TPoly& b) {
  if (a.empty() || b.empty()) return {};
  TPoly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (!b[j].is_zero()) out[i + j] += a[i] * b[j];
  }
  return out;
}

inline TPoly sub(TPoly a, const TPoly& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  return a;
}

inline TPoly derivative(const TPoly& a) {
  TPoly out;
  for (std::size_t i = 1; i < a.size(); ++i) out.push_back(a[i].scaled(Rat(static_cast<long>(i))));
  return out;
}

inline TPoly q_of(const AnsatzLayout& l) {
  TPoly q(static_cast<std::size_t>(l.dq) + 1);
  for (int i = 0; i < l.dq; ++i) q[static_cast<std::size_t>(i)] = QPoly::var(l.v(i));
  q[static_cast<std::size_t>(l.dq)] = QPoly::constant(Rat(1));
  return q;
}

/// The remainder of p by q in division form, of formal degree dq - 1.
inline TPoly remainder_of(const AnsatzLayout& l) {
  TPoly r(static_cast<std::size_t>(l.dq));
  for (int i = 0; i < l.dq; ++i) r[static_cast<std::size_t>(i)] = QPoly::var(l.u(i));
  return r;
}

inline TPoly p_of(const AnsatzLayout& l) {
  if (l.divides()) {
    TPoly quotient(static_cast<std::size_t>(l.dp - l.dq) + 1);
    for (int j = 0; j <= l.dp - l.dq; ++j) quotient[static_cast<std::size_t>(j)] = QPoly::var(l.u(l.dq + j));
    TPoly p = mul(quotient, q_of(l));
    const TPoly r = remainder_of(l);
    for (std::size_t i = 0; i < r.size(); ++i) p[i] += r[i];
    return p;
  }
  TPoly p(static_cast<std::size_t>(l.dp) + 1);
  for (int i = 0; i <= l.dp; ++i) p[static_cast<std::size_t>(i)] = QPoly::var(l.u(i));
  return p;
}

/// Fraction-free determinant (Bareiss) of a square matrix of polynomials.
inline QPoly determinant(std::vector<std::vector<QPoly>> m) {
  const std::size_t n = m.size();
  if (n == 0) return QPoly::constant(Rat(1));
  QPoly prev = QPoly::constant(Rat(1));
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t r = k + 1;
      while (r < n && m[r][k].is_zero()) ++r;
      if (r == n) return {};
      std::swap(m[k], m[r]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]).exact_div(prev);
    prev = m[k][k];
  }
  return negate ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

/// Res_t(p, q) up to sign, as a polynomial in the ansatz unknowns. Since q is monic, p may be
/// replaced by its remainder in division form.
/// Unknowns that remain free in the coprimality resultant once `fixed` is substituted.
inline std::size_t resultant_unknowns(const AnsatzLayout& l, const std::vector<std::optional<Rat>>& fixed) {
  std::size_t n = 0;
  const int top = l.divides() ? l.dq - 1 : l.dp;
  for (int i = 0; i <= top; ++i) n += !fixed[l.u(i)];
  for (int i = 0; i < l.dq; ++i) n += !fixed[l.v(i)];
  return n;
}

/// Res_t(p, q) with the unknowns in `fixed` substituted; in division form p is replaced by its
/// remainder, which has the same common factors with q.
inline QPoly resultant(const AnsatzLayout& l, const std::vector<std::optional<Rat>>& fixed) {
  TPoly p = l.divides() ? remainder_of(l) : p_of(l), q = q_of(l);
  for (auto* poly : {&p, &q})
    for (auto& c : *poly)
      for (std::size_t k = 0; k < fixed.size(); ++k)
        if (fixed[k] && c.uses_var(k)) c = c.evaluate(k, *fixed[k]);
  const int dp = static_cast<int>(p.size()) - 1;
  const std::size_t n = static_cast<std::size_t>(dp + l.dq);
  std::vector<std::vector<QPoly>> m(n, std::vector<QPoly>(n));
  for (std::size_t r = 0; r < static_cast<std::size_t>(l.dq); ++r)
    for (int i = 0; i <= dp; ++i) m[r][r + static_cast<std::size_t>(dp - i)] = p[static_cast<std::size_t>(i)];
  for (std::size_t r = 0; r < static_cast<std::size_t>(dp); ++r)
    for (int i = 0; i <= l.dq; ++i)
      m[l.dq + r][r + static_cast<std::size_t>(l.dq - i)] = q[static_cast<std::size_t>(i)];
  return determinant(std::move(m));
}

inline std::vector<QPoly> equations(const DiffPoly& f, const AnsatzLayout& l) {
  const TPoly p = p_of(l), q = q_of(l);
  const TPoly d = sub(mul(derivative(p), q), mul(p, derivative(q)));
  unsigned clearing = 0;
  for (const auto& tm : f.poly().terms()) clearing = std::max(clearing, tm.m.e[kY] + 2u * tm.m.e[kYP]);
  std::vector<TPoly> ppow{{QPoly::constant(Rat(1))}}, dpow{{QPoly::constant(Rat(1))}}, qpow{{QPoly::constant(Rat(1))}};
  auto power = [](std::vector<TPoly>& cache, const TPoly& base, unsigned e) -> const TPoly& {
    while (cache.size() <= e) cache.push_back(mul(cache.back(), base));
    return cache[e];
  };
  // group the terms of f by (y, y') exponents so each product is formed once
  std::map<std::pair<unsigned, unsigned>, UniPoly> groups;
  for (const auto& [jk, u] : t_coefficients(f))
    groups.emplace(std::pair<unsigned, unsigned>(jk.first, jk.second), u);
  TPoly total;
  for (const auto& [jk, coeff] : groups) {
    const auto [j, k] = jk;
    TPoly prod = mul(mul(power(ppow, p, j), power(dpow, d, k)), power(qpow, q, clearing - j - 2 * k));
    TPoly term(prod.size() + coeff.coeffs().size());
    for (std::size_t a = 0; a < coeff.coeffs().size(); ++a) {
      if (is_zero(coeff.coeffs()[a])) continue;
      for (std::size_t b = 0; b < prod.size(); ++b)
        if (!prod[b].is_zero()) term[a + b] += prod[b].scaled(coeff.coeffs()[a]);
    }
    if (total.size() < term.size()) total.resize(term.size());
    for (std::size_t i = 0; i < term.size(); ++i) total[i] += term[i];
  }
  std::vector<QPoly> out;
  for (auto& e : total)
    if (!e.is_zero()) out.push_back(std::move(e));
  return out;
}

}  // namespace detail::ansatz

/// The polynomial system whose solutions are the ansatz coefficients of the rational solutions
/// p/q with deg p <= dp and q monic of degree dq. Each equation is a t-coefficient of
/// q^E f(p/q, (p'q - pq')/q^2) with the smallest clearing exponent E.
inline PolySystem ansatz_system(const DiffPoly& f, int dp, int dq) {
  if (dp < 0 || dq < 0 || dp + dq < 1) throw DomainError("ansatz_system: need dp, dq >= 0 and dp + dq >= 1");
  AnsatzLayout l{dp, dq, 0};
  if (l.slot_count() > kMaxVars) throw DomainError("ansatz_system: too many unknowns");
  return {l.names(), detail::ansatz::equations(f, l)};
}

/// One-parameter family of solutions; c is the free parameter.
struct SolutionFamily {
  int dp = 0;
  int dq = 0;
  bool parametrized = false;  // the family is a line of ansatz unknowns, all of it solving f
  QPoly numerator;            // in (c, t) = slots (0, 1), when parametrized
  QPoly denominator;          // idem
  RatFunc representative;     // a verified member
  std::vector<std::string> basis;  // printed reduced basis, when not parametrized

  /// Whether r is the member for some rational value of c (parametrized families only).
  bool contains(const RatFunc& r) const {
    if (!parametrized) return r == representative;
    // numerator(c, t) q(t) - denominator(c, t) p(t) vanishes identically in t
    const QPoly diff = numerator * from_univariate(r.den(), 1) - denominator * from_univariate(r.num(), 1);
    UniPoly common;
    for (int i = 0; i <= std::max(diff.degree_in(1), 0); ++i)
      common = UniPoly::gcd(common, to_univariate(diff.coefficient(1, static_cast<unsigned>(i)), 0));
    if (!diff.is_zero() && common.is_zero()) return false;
    if (common.is_zero()) return true;  // every member equals r
    for (const Rat& c : rational_roots(common)) {
      const UniPoly den = to_univariate(denominator.evaluate(0, c), 1);
      if (!den.is_zero() && RatFunc(to_univariate(numerator.evaluate(0, c), 1), den) == r) return true;
    }
    return false;
  }

  std::string expression() const {
    if (!parametrized) return to_string(representative);
    const std::vector<std::string> names{"c", "t"};
    std::string num = to_string(numerator, names);
    if (denominator == QPoly::constant(Rat(1))) return num;
    auto wrap = [](const std::string& s) {
      return s.find_first_of("+-") == std::string::npos || (s[0] == '-' && s.find_first_of("+-", 1) == std::string::npos)
                 ? s
                 : "(" + s + ")";
    };
    return wrap(num) + "/" + wrap(to_string(denominator, names));
  }
};

enum class PassOutcome { Solved, Families, BudgetExceeded, Skipped };

inline std::string to_string(PassOutcome o) {
  switch (o) {
    case PassOutcome::Solved: return "solved";
    case PassOutcome::Families: return "families";
    case PassOutcome::BudgetExceeded: return "budget-exceeded";
    default: return "skipped";
  }
}

struct PassSummary {
  int dp = 0;
  int dq = 0;
  PassOutcome outcome = PassOutcome::Solved;
  std::uint64_t steps = 0;
  bool complete = true;   // false when a positive-dimensional remainder could not be resolved
  bool oversized = false;  // not searched: more unknowns than the polynomial engine has variables
};

struct SolverConfig {
  GroebnerConfig groebner;
  ModularConfig modular;
  std::uint64_t pass_step_budget = 2'000'000;
  std::uint64_t total_step_budget = 40'000'000;
  std::uint64_t seed = 0;
  int max_family_rounds = 3;
  int max_resultant_size = 10;  // free unknowns in Res_t(p, q) above which a branch is skipped
  int max_presolve_splits = 32;  // monomial-factor splits per pass before basis computations
};

struct SolutionSet {
  std::vector<RatFunc> rational_solutions;  // non-constant, verified, sorted
  ConstantSolutions constants;
  std::vector<SolutionFamily> families;
  long cap = 0;
  long effective_bound = 0;
  bool truncated = false;         // the search stopped below the theoretical bound
  bool budget_exhausted = false;  // some pass ran out of steps
  bool incomplete = false;        // some pass left an unresolved positive-dimensional part
  std::vector<PassSummary> passes;
};

/// Where the poles of a rational solution can lie. At a pole of order m at t = a, the term
/// A_jk(t) y^j y'^k of f has order ord_a(A_jk) - m j - (m + 1) k, and the lowest order must be
/// reached by at least two terms. When that can happen with every ord_a(A_jk) = 0 the poles are
/// movable; otherwise every pole is a root of some A_jk, with an order balanced at that root.
struct PoleStructure {
  int max_order = 0;
  std::vector<int> movable_orders;  // orders in 1..max_order balanced where no A_jk vanishes
  std::vector<std::pair<UniPoly, std::vector<int>>> fixed_factors;  // irreducible factor, balanced orders

  bool movable() const { return !movable_orders.empty(); }
};

namespace detail::poles {

inline bool balanced(const std::vector<std::pair<std::pair<int, int>, int>>& orders, int m) {
  long lowest = 0;
  int reached = 0;
  for (const auto& [jk, o] : orders) {
    const long v = o - static_cast<long>(m) * jk.first - static_cast<long>(m + 1) * jk.second;
    if (reached == 0 || v < lowest) {
      lowest = v;
      reached = 1;
    } else if (v == lowest) {
      ++reached;
    }
  }
  return reached >= 2;
}

inline int multiplicity(UniPoly a, const UniPoly& g) {
  int n = 0;
  for (;;) {
    auto [quo, rem] = UniPoly::divrem(a, g);
    if (!rem.is_zero()) return n;
    a = std::move(quo);
    ++n;
  }
}

}  // namespace detail::poles

inline PoleStructure pole_structure(const DiffPoly& f, int max_order) {
  PoleStructure out;
  out.max_order = max_order;
  const auto coeffs = t_coefficients(f);
  std::vector<std::pair<std::pair<int, int>, int>> generic;
  for (const auto& [jk, a] : coeffs) generic.push_back({jk, 0});
  for (int m = 1; m <= max_order; ++m)
    if (detail::poles::balanced(generic, m)) out.movable_orders.push_back(m);
  std::vector<UniPoly> irreducible;
  for (const auto& [jk, a] : coeffs)
    if (a.degree() > 0)
      for (const auto& fac : factor_over_q(a))
        if (std::find(irreducible.begin(), irreducible.end(), fac.poly) == irreducible.end())
          irreducible.push_back(fac.poly);
  std::sort(irreducible.begin(), irreducible.end(), [](const UniPoly& a, const UniPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return to_string(a) < to_string(b);
  });
  for (const auto& g : irreducible) {
    std::vector<std::pair<std::pair<int, int>, int>> orders;
    for (const auto& [jk, a] : coeffs) orders.push_back({jk, detail::poles::multiplicity(a, g)});
    std::vector<int> allowed;
    for (int m = 1; m * g.degree() <= max_order; ++m)
      if (detail::poles::balanced(orders, m)) allowed.push_back(m);
    if (!allowed.empty()) out.fixed_factors.emplace_back(g, std::move(allowed));
  }
  return out;
}

/// Monic denominators of degree exactly `degree` built from the fixed pole factors; meaningful
/// only when the poles are not movable.
inline std::vector<UniPoly> candidate_denominators(const PoleStructure& ps, int degree) {
  std::vector<UniPoly> out;
  std::function<void(std::size_t, int, const UniPoly&)> walk = [&](std::size_t i, int left, const UniPoly& acc) {
    if (left == 0) {
      out.push_back(acc);
      return;
    }
    if (i == ps.fixed_factors.size()) return;
    walk(i + 1, left, acc);
    const auto& [g, orders] = ps.fixed_factors[i];
    for (int m : orders)
      if (m * g.degree() <= left) walk(i + 1, left - m * g.degree(), acc * g.pow(static_cast<unsigned>(m)));
  };
  walk(0, degree, UniPoly::constant(Rat(1)));
  return out;
}

namespace detail::solve {

inline UniPoly eval_on_line(const QPoly& e, const std::vector<UniPoly>& coords) {
  UniPoly acc;
  for (const auto& tm : e.terms()) {
    UniPoly prod = UniPoly::constant(tm.c);
    for (std::size_t k = 0; k < coords.size(); ++k)
      if (tm.m.e[k]) prod = prod * coords[k].pow(tm.m.e[k]);
    acc += prod;
  }
  return acc;
}

inline Rat eval_at(const QPoly& e, const std::vector<Rat>& pt) {
  Rat acc;
  for (const auto& tm : e.terms()) {
    Rat prod = tm.c;
    for (std::size_t k = 0; k < pt.size(); ++k)
      for (unsigned j = 0; j < tm.m.e[k]; ++j) prod *= pt[k];
    acc += prod;
  }
  return acc;
}

inline std::optional<RatFunc> candidate(const AnsatzLayout& l, const std::vector<Rat>& pt) {
  std::vector<Rat> pc, qc;
  for (const auto& e : detail::ansatz::p_of(l)) pc.push_back(eval_at(e, pt));
  for (const auto& e : detail::ansatz::q_of(l)) qc.push_back(eval_at(e, pt));
  UniPoly p(std::move(pc)), q(std::move(qc));
  if (p.degree() != l.dp) return std::nullopt;
  RatFunc r(p, q);
  if (r.den().degree() != l.dq || r.is_constant()) return std::nullopt;  // common factor or constant
  return r;
}

struct PassState {
  const DiffPoly& f;
  AnsatzLayout layout;
  const SolverConfig& cfg;
  StepBudget& budget;
  std::vector<QPoly> base_equations;  // at the layout's offset, with the fixed unknowns substituted
  std::vector<std::optional<Rat>> fixed;  // per slot, unknowns settled by the presolve
  std::vector<RatFunc> found;
  std::vector<SolutionFamily> families;
  bool complete = true;
  bool exhausted = false;
};

/// The base equations plus w * guard - 1, which restricts to points where guard does not vanish
/// (slot 0 holds the auxiliary unknown w).
inline std::vector<ZPoly> guarded(const PassState& st, const QPoly& guard) {
  std::vector<ZPoly> gens;
  for (const auto& e : st.base_equations) gens.push_back(primitive_part(e));
  gens.push_back(primitive_part(QPoly::var(0) * guard - QPoly::constant(Rat(1))));
  return gens;
}

inline std::vector<std::size_t> candidate_unknowns(const PassState& st) {
  std::vector<std::size_t> out;
  for (std::size_t k = st.layout.offset; k < st.layout.slot_count(); ++k)
    if (!st.fixed[k]) out.push_back(k);
  return out;
}

inline QPoly substitute_fixed(QPoly p, const std::vector<std::optional<Rat>>& fixed) {
  for (std::size_t k = 0; k < fixed.size(); ++k)
    if (fixed[k] && p.uses_var(k)) p = p.evaluate(k, *fixed[k]);
  return p;
}

inline void collect(PassState& st, const std::vector<std::vector<Rat>>& pts) {
  for (const auto& pt : pts) {
    auto r = candidate(st.layout, pt);
    if (r && verify_solution(st.f, *r) && std::find(st.found.begin(), st.found.end(), *r) == st.found.end())
      st.found.push_back(*r);
  }
}

struct Line {
  std::vector<UniPoly> coords;  // per slot, as polynomials in the parameter
};

/// Tries to describe the positive-dimensional part through the free unknown `free_slot` by
/// affine lines: two generic slices are solved and every pair of points is tested as a line.
inline std::vector<Line> find_lines(const std::vector<ZPoly>& gens, std::size_t free_slot, PassState& st) {
  const AnsatzLayout& l = st.layout;
  std::vector<std::pair<Rat, std::vector<std::vector<Rat>>>> samples;
  for (long s = 1; s <= 12 && samples.size() < 2; ++s) {
    std::vector<ZPoly> slice;
    for (const auto& g : gens) slice.push_back(detail::gb::specialize(g, free_slot, Rat(s)));
    std::vector<std::optional<Rat>> assignment = st.fixed;
    assignment[free_slot] = Rat(s);
    std::vector<std::vector<Rat>> pts;
    const PointSearch r = rational_points(std::move(slice), assignment, pts, st.cfg.groebner, st.cfg.modular, st.budget);
    if (r == PointSearch::Exhausted) {
      st.exhausted = true;
      return {};
    }
    if (r == PointSearch::NotZeroDim || pts.empty()) continue;
    samples.emplace_back(Rat(s), std::move(pts));
  }
  std::vector<Line> lines;
  auto keep_points_off_lines = [&]() {
    // sample points on no line are genuine solutions that happen to lie on a slice
    for (const auto& [s, pts] : samples)
      for (const auto& pt : pts) {
        bool on_line = false;
        for (const auto& line : lines) {
          bool same = true;
          for (std::size_t k = l.offset; k < l.slot_count() && same; ++k)
            if (line.coords[k].eval(s) != pt[k]) same = false;
          on_line = on_line || same;
        }
        if (!on_line) collect(st, {pt});
      }
  };
  if (samples.size() < 2) {
    keep_points_off_lines();
    return lines;
  }
  const auto& [s1, pts1] = samples[0];
  const auto& [s2, pts2] = samples[1];
  for (const auto& a : pts1)
    for (const auto& b : pts2) {
      Line line;
      for (std::size_t k = 0; k < l.slot_count(); ++k) {
        const Rat slope = (b[k] - a[k]) / (s2 - s1);
        line.coords.push_back(UniPoly({a[k] - slope * s1, slope}));
      }
      bool on_variety = true;
      for (const auto& e : st.base_equations)
        if (!eval_on_line(e, line.coords).is_zero()) {
          on_variety = false;
          break;
        }
      if (!on_variety) continue;
      if (std::any_of(lines.begin(), lines.end(), [&](const Line& o) { return o.coords == line.coords; })) continue;
      lines.push_back(line);
    }
  keep_points_off_lines();
  return lines;
}

inline SolutionFamily family_from_line(const Line& line, const AnsatzLayout& l, const DiffPoly& f) {
  SolutionFamily fam;
  fam.dp = l.dp;
  fam.dq = l.dq;
  fam.parametrized = true;
  auto lift = [](const UniPoly& coeff, unsigned t_power) {
    // coeff(c) * t^t_power in slots (c, t)
    QPoly out;
    for (std::size_t i = 0; i < coeff.coeffs().size(); ++i) {
      Monomial m;
      m.e[0] = static_cast<std::uint16_t>(i);
      m.e[1] = static_cast<std::uint16_t>(t_power);
      out += QPoly::term(m, coeff.coeffs()[i]);
    }
    return out;
  };
  const auto p = detail::ansatz::p_of(l), q = detail::ansatz::q_of(l);
  for (std::size_t i = 0; i < p.size(); ++i) fam.numerator += lift(eval_on_line(p[i], line.coords), static_cast<unsigned>(i));
  for (std::size_t i = 0; i < q.size(); ++i) fam.denominator += lift(eval_on_line(q[i], line.coords), static_cast<unsigned>(i));
  // a verified member with exact degrees
  for (long c = 1; c <= 64; ++c) {
    std::vector<Rat> pt;
    for (const auto& u : line.coords) pt.push_back(u.eval(Rat(c)));
    auto r = candidate(l, pt);
    if (r && verify_solution(f, *r)) {
      fam.representative = *r;
      break;
    }
  }
  return fam;
}

/// Printed defining equations of a component that is not an affine line: the exact reduced basis
/// when it is cheap to compute, otherwise the ansatz equations themselves.
inline std::vector<std::string> describe_component(const std::vector<ZPoly>& gens, const PassState& st) {
  const AnsatzLayout& l = st.layout;
  std::vector<std::string> names(kMaxVars, "w");
  const auto ln = l.names();
  for (std::size_t k = 0; k < ln.size(); ++k) names[l.offset + k] = ln[k];
  StepBudget small(20'000);
  GroebnerBasis gb = groebner_basis(gens, st.cfg.groebner, small);
  std::vector<std::string> out;
  if (gb.complete) {
    for (const auto& g : gb.polys)
      if (!g.uses_var(0)) out.push_back(to_string(g, names));
  } else {
    for (const auto& e : st.base_equations) out.push_back(to_string(e, names));
  }
  return out;
}

inline Integer random_small(std::mt19937_64& rng) { return Integer(static_cast<long>(rng() % 17) + 1); }

/// Resolves the ideal of the base equations away from the zeros of `guard`.
inline void resolve(const QPoly& guard, PassState& st, int round, std::mt19937_64& rng) {
  const AnsatzLayout& l = st.layout;
  const std::vector<ZPoly> gens = guarded(st, guard);
  const IdealAnalysis shape = analyze_ideal(gens, candidate_unknowns(st), st.cfg.groebner, st.budget);
  if (shape.shape == IdealShape::Exhausted) {
    st.exhausted = true;
    return;
  }
  if (shape.shape == IdealShape::Unit) return;
  if (shape.shape == IdealShape::ZeroDim) {
    std::vector<std::optional<Rat>> assignment = st.fixed;
    std::vector<std::vector<Rat>> pts;
    const PointSearch r = rational_points(gens, assignment, pts, st.cfg.groebner, st.cfg.modular, st.budget);
    if (r != PointSearch::Done) st.exhausted = true;
    collect(st, pts);
    return;
  }
  const auto& free = shape.free_unknowns;
  if (free.size() > 1 || round >= st.cfg.max_family_rounds) {
    st.complete = false;
    return;
  }
  const std::size_t known = st.found.size();
  auto lines = find_lines(gens, free.front(), st);
  if (st.exhausted) return;
  if (lines.empty()) {
    // not a line: the sampled points stand for the component, which is reported by one of them
    // and its defining equations
    st.complete = false;
    std::vector<RatFunc> sampled(st.found.begin() + static_cast<std::ptrdiff_t>(known), st.found.end());
    st.found.resize(known);
    for (const auto& r : sampled)
      if (ratfunc_degree(r) == std::max(l.dp, l.dq)) {
        SolutionFamily fam;
        fam.dp = l.dp;
        fam.dq = l.dq;
        fam.representative = r;
        fam.basis = describe_component(gens, st);
        st.families.push_back(std::move(fam));
        break;
      }
    return;
  }
  for (const auto& line : lines) st.families.push_back(family_from_line(line, l, st.f));
  // isolated points off the lines: also require a random linear form vanishing on each line to be
  // nonzero
  QPoly next = guard;
  const std::size_t fs = free.front();
  for (const auto& line : lines) {
    QPoly form;
    for (std::size_t k = l.offset; k < l.slot_count(); ++k) {
      if (k == fs || st.fixed[k]) continue;
      // x_k - (a_k + b_k x_free)
      const UniPoly& c = line.coords[k];
      QPoly piece = QPoly::var(k) - QPoly::constant(c.coeff(0)) - QPoly::var(fs).scaled(c.coeff(1));
      form += piece.scaled(Rat(random_small(rng)));
    }
    next *= form;
  }
  resolve(next, st, round + 1, rng);
}

/// Equations with some unknowns fixed to rational values.
struct Branch {
  std::vector<QPoly> equations;
  std::vector<std::optional<Rat>> fixed;
};

/// Exact branching before any basis computation: an equation in a single unknown is replaced by
/// its rational roots, and an equation x^a g with a monomial factor splits into x = 0 and
/// (x != 0, g = 0) while `splits_left` allows. Powers of unknowns known to be nonzero (the
/// leading coefficient of p among them) are divided out, and branches where an equation becomes
/// a nonzero constant are dropped. Equations are scanned from the highest power of t, where the
/// system is closest to triangular.
inline void presolve(std::vector<QPoly> equations, std::vector<std::optional<Rat>> fixed, std::vector<bool> nonzero,
                     const AnsatzLayout& l, int& splits_left, std::vector<Branch>& out) {
  auto lowest_power = [](const QPoly& e, std::size_t k) {
    unsigned power = ~0u;
    for (const auto& tm : e.terms()) power = std::min<unsigned>(power, tm.m.e[k]);
    return power;
  };
  std::vector<QPoly> live;
  for (auto& e : equations) {
    if (e.is_zero()) continue;
    for (std::size_t k = l.offset; k < l.slot_count(); ++k)
      if (nonzero[k] && e.uses_var(k))
        if (const unsigned a = lowest_power(e, k)) e = e.exact_div(QPoly::var(k, a));
    if (e.is_constant()) return;
    live.push_back(std::move(e));
  }
  auto fix = [&](std::size_t k, const Rat& value) {
    std::vector<QPoly> next;
    for (const auto& g : live) next.push_back(g.uses_var(k) ? g.evaluate(k, value) : g);
    auto next_fixed = fixed;
    next_fixed[k] = value;
    presolve(std::move(next), std::move(next_fixed), nonzero, l, splits_left, out);
  };
  for (auto it = live.rbegin(); it != live.rend(); ++it) {
    std::size_t only = kMaxVars;
    bool univariate = true;
    for (std::size_t k = l.offset; k < l.slot_count() && univariate; ++k)
      if (it->uses_var(k)) {
        if (only != kMaxVars) univariate = false;
        only = k;
      }
    if (!univariate || only == kMaxVars) continue;
    for (const Rat& root : rational_roots(to_univariate(*it, only)))
      if (!nonzero[only] || sgn(root) != 0) fix(only, root);
    return;
  }
  if (splits_left > 0)
    for (std::size_t i = live.size(); i-- > 0;)
      for (std::size_t k = l.offset; k < l.slot_count(); ++k) {
        if (!live[i].uses_var(k) || !lowest_power(live[i], k)) continue;
        --splits_left;
        fix(k, Rat(0));
        nonzero[k] = true;
        presolve(std::move(live), std::move(fixed), std::move(nonzero), l, splits_left, out);
        return;
      }
  out.push_back({std::move(live), std::move(fixed)});
}

}  // namespace detail::solve

/// Runs one (dp, dq) pass: the ansatz ideal away from u_dp = 0, and (when positive dimensional
/// and dq > 0) also away from Res_t(p, q) = 0 so that p/q is reduced.
inline PassSummary solve_pass(const DiffPoly& f, int dp, int dq, const SolverConfig& cfg, StepBudget& total,
                              std::vector<RatFunc>& solutions, std::vector<SolutionFamily>& families) {
  using namespace detail::solve;
  PassSummary summary{dp, dq};
  AnsatzLayout l{dp, dq, 1, true};
  if (l.slot_count() > kMaxVars) {
    summary.outcome = PassOutcome::Skipped;
    summary.complete = false;
    summary.oversized = true;
    return summary;
  }
  StepBudget budget(std::min(cfg.pass_step_budget, total.remaining));
  const std::uint64_t start = budget.remaining;
  PassState st{f, l, cfg, budget, detail::ansatz::equations(f, l)};
  std::mt19937_64 rng(cfg.seed * 1000003u + static_cast<std::uint64_t>(dp) * 131u + static_cast<std::uint64_t>(dq));

  auto finish = [&](PassOutcome outcome) {
    summary.outcome = outcome;
    summary.steps = start - budget.remaining;
    total.spend(std::min(summary.steps, total.remaining));
    summary.complete = st.complete && !st.exhausted;
    for (auto& r : st.found)
      if (std::find(solutions.begin(), solutions.end(), r) == solutions.end()) solutions.push_back(r);
    for (auto& fam : st.families) families.push_back(std::move(fam));
    return summary;
  };

  // without movable poles the denominator is one of finitely many products of pole factors
  std::vector<std::vector<std::optional<Rat>>> starts;
  const PoleStructure poles = pole_structure(f, dq);
  if (dq > 0 && !poles.movable()) {
    for (const UniPoly& q : candidate_denominators(poles, dq)) {
      std::vector<std::optional<Rat>> fixed(l.slot_count());
      for (int i = 0; i < dq; ++i) fixed[l.v(i)] = q.coeff(i);
      starts.push_back(std::move(fixed));
    }
  } else {
    starts.emplace_back(l.slot_count());
  }
  std::vector<Branch> branches;
  for (const auto& fixed : starts) {
    std::vector<QPoly> equations;
    for (const auto& e : st.base_equations) equations.push_back(substitute_fixed(e, fixed));
    int splits_left = cfg.max_presolve_splits;
    std::vector<bool> nonzero(l.slot_count(), false);
    nonzero[l.u(dp)] = true;
    presolve(std::move(equations), fixed, std::move(nonzero), l, splits_left, branches);
  }
  bool skipped = false;
  for (auto& br : branches) {
    st.base_equations = std::move(br.equations);
    st.fixed = std::move(br.fixed);
    QPoly guard = substitute_fixed(QPoly::var(l.u(dp)), st.fixed);
    const IdealAnalysis first = analyze_ideal(guarded(st, guard), candidate_unknowns(st), cfg.groebner, budget);
    if (first.shape == IdealShape::Exhausted) return finish(PassOutcome::BudgetExceeded);
    if (first.shape == IdealShape::Unit) continue;
    if (first.shape == IdealShape::PositiveDim && dq > 0) {
      if (detail::ansatz::resultant_unknowns(l, st.fixed) > static_cast<std::size_t>(cfg.max_resultant_size)) {
        st.complete = false;
        skipped = true;
        continue;
      }
      const QPoly res = detail::ansatz::resultant(l, st.fixed);
      if (res.is_zero()) continue;  // every point of the branch has a common factor
      guard *= res;
    }
    resolve(guard, st, 0, rng);
    if (st.exhausted) return finish(PassOutcome::BudgetExceeded);
  }
  if (skipped && st.families.empty()) return finish(PassOutcome::Skipped);
  return finish(st.families.empty() ? PassOutcome::Solved : PassOutcome::Families);
}

/// Orders solutions by degree, then with a positive leading coefficient first, then by text.
inline void sort_solutions(std::vector<RatFunc>& sols) {
  std::sort(sols.begin(), sols.end(), [](const RatFunc& a, const RatFunc& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    const bool pa = sgn(a.num().leading()) > 0, pb = sgn(b.num().leading()) > 0;
    if (pa != pb) return pa;
    return to_string(a) < to_string(b);
  });
}

/// All rational solutions of degree at most min(bound, cap); a missing bound means the search
/// is capped and flagged truncated.
inline SolutionSet find_rational_solutions(const DiffPoly& f, const std::optional<LazyMagnitude>& degree_bound,
                                           long cap, const SolverConfig& cfg = {}) {
  detail::require_order(f, "find_rational_solutions");
  if (cap < 0) throw DomainError("find_rational_solutions: negative cap");
  SolutionSet out;
  out.cap = cap;
  out.constants = constant_solutions(f);
  if (!degree_bound) {
    out.effective_bound = cap;
    out.truncated = true;
  } else {
    auto c = compare(*degree_bound, LazyMagnitude::exact(Integer(cap)));
    if (c && *c != std::strong_ordering::greater) {
      out.effective_bound = degree_bound->exact_value().get_si();
    } else {
      out.effective_bound = cap;
      out.truncated = true;
    }
  }
  const long eff = out.effective_bound;
  StepBudget total(cfg.total_step_budget);
  for (long s = 1; s <= 2 * eff; ++s)
    for (long dq = std::max(0L, s - eff); dq <= std::min(s, eff); ++dq) {
      const long dp = s - dq;
      if (total.remaining == 0) {
        out.budget_exhausted = true;
        out.passes.push_back({static_cast<int>(dp), static_cast<int>(dq), PassOutcome::BudgetExceeded, 0, false});
        continue;
      }
      PassSummary ps = solve_pass(f, static_cast<int>(dp), static_cast<int>(dq), cfg, total, out.rational_solutions,
                                  out.families);
      if (ps.outcome == PassOutcome::BudgetExceeded) out.budget_exhausted = true;
      if (!ps.complete) out.incomplete = true;
      out.passes.push_back(ps);
    }
  std::vector<SolutionFamily> distinct;
  for (auto& fam : out.families)
    if (std::none_of(distinct.begin(), distinct.end(),
                     [&](const SolutionFamily& o) { return o.expression() == fam.expression(); }))
      distinct.push_back(std::move(fam));
  out.families = std::move(distinct);
  // soundness post-pass; members of a reported family are listed through the family only
  std::vector<RatFunc> verified;
  for (const auto& r : out.rational_solutions)
    if (verify_solution(f, r) &&
        std::none_of(out.families.begin(), out.families.end(), [&](const SolutionFamily& fam) {
          return fam.parametrized && fam.contains(r);
        }))
      verified.push_back(r);
  out.rational_solutions = std::move(verified);
  sort_solutions(out.rational_solutions);
  return out;
}

}  // namespace aode
