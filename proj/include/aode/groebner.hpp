#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "aode/factor.hpp"
#include "aode/mpoly.hpp"

namespace aode {

/// Limits for one Groebner basis computation. The monomial order eliminates variable 0 (the
/// auxiliary unknown of a saturation) and is graded reverse lexicographic on the others, with
/// variable 1 largest.
struct GroebnerConfig {
  std::size_t max_basis_size = 600;
  int max_poly_degree = 60;
  std::size_t max_coefficient_bits = 1u << 18;
  std::size_t max_quotient_dimension = 400;  // for point extraction on zero-dimensional ideals
  std::uint64_t step_budget = 3'000'000;     // elementary reduction steps
};

/// Shared step counter so that a caller can bound a whole sequence of computations.
struct StepBudget {
  std::uint64_t remaining;

  explicit StepBudget(std::uint64_t steps) : remaining(steps) {}
  bool spend(std::uint64_t n = 1) {
    if (remaining < n) {
      remaining = 0;
      return false;
    }
    remaining -= n;
    return true;
  }
};

struct GroebnerBasis {
  std::vector<ZPoly> polys;  // reduced, primitive, positive leading coefficients
  bool complete = true;      // false when a limit was hit
  std::uint64_t steps = 0;
};

/// Strict "a is larger than b" in the elimination order used by every basis computation.
inline bool order_greater(const Monomial& a, const Monomial& b) {
  if (a.e[0] != b.e[0]) return a.e[0] > b.e[0];
  unsigned da = 0, db = 0;
  for (std::size_t k = 1; k < kMaxVars; ++k) {
    da += a.e[k];
    db += b.e[k];
  }
  if (da != db) return da > db;
  for (std::size_t k = kMaxVars; k-- > 1;)
    if (a.e[k] != b.e[k]) return a.e[k] < b.e[k];
  return false;
}

/// Leading monomial of p in the basis order (ZPoly itself stores terms lexicographically).
template <class C>
Monomial leading_monomial(const MPoly<C>& p) {
  Monomial best;
  bool first = true;
  for (const auto& tm : p.terms())
    if (first || order_greater(tm.m, best)) {
      best = tm.m;
      first = false;
    }
  return best;
}

namespace detail::gb {

using Term = ZPoly::Term;
using Poly = std::vector<Term>;

inline ZPoly to_zpoly(Poly terms) { return ZPoly::from_terms(std::move(terms)); }

inline Poly in_order(const ZPoly& p) {
  Poly out = p.terms();
  std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) { return order_greater(a.m, b.m); });
  return out;
}

/// a * f - c * x^shift * g, where the leading terms are known to cancel (both skipped).
inline Poly cancel_lead(const Poly& f, const Integer& a, const Poly& g, const Integer& c, const Monomial& shift) {
  Poly out;
  out.reserve(f.size() + g.size());
  std::size_t i = 1, j = 1;
  while (i < f.size() || j < g.size()) {
    if (j == g.size()) {
      out.push_back({f[i].m, a * f[i].c});
      ++i;
      continue;
    }
    const Monomial gm = g[j].m * shift;
    if (i == f.size() || order_greater(gm, f[i].m)) {
      out.push_back({gm, -c * g[j].c});
      ++j;
    } else if (order_greater(f[i].m, gm)) {
      out.push_back({f[i].m, a * f[i].c});
      ++i;
    } else {
      Integer v = a * f[i].c - c * g[j].c;
      if (sgn(v) != 0) out.push_back({f[i].m, std::move(v)});
      ++i;
      ++j;
    }
  }
  return out;
}

inline void make_primitive(Poly& p) {
  if (p.empty()) return;
  Integer g = 0;
  for (const auto& tm : p) {
    g = igcd(g, tm.c);
    if (g == 1) break;
  }
  if (sgn(p.front().c) < 0) g = -g;
  if (g != 1)
    for (auto& tm : p) mpz_divexact(tm.c.get_mpz_t(), tm.c.get_mpz_t(), g.get_mpz_t());
}

inline std::size_t coefficient_bits(const Poly& p) {
  std::size_t b = 0;
  for (const auto& tm : p) b = std::max(b, mpz_sizeinbase(tm.c.get_mpz_t(), 2));
  return b;
}

/// Fully reduces f by the basis elements flagged active; with keep_lead the leading term is left
/// alone and only the tail is reduced. Returns std::nullopt when the budget runs out. The result
/// is primitive with a positive leading coefficient.
inline std::optional<Poly> normal_form(Poly f, const std::vector<Poly>& basis, const std::vector<bool>& active,
                                       StepBudget& budget, bool keep_lead = false) {
  Poly rem;
  std::size_t since_content = 0;
  std::size_t pos = 0;  // f[pos..] is the part still to be reduced
  if (keep_lead && !f.empty()) {
    rem.push_back(std::move(f.front()));
    pos = 1;
  }
  auto compact = [&]() {
    if (pos > 0) {
      f.erase(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(pos));
      pos = 0;
    }
  };
  while (pos < f.size()) {
    const Monomial lm = f[pos].m;
    const Poly* divisor = nullptr;
    for (std::size_t k = 0; k < basis.size(); ++k)
      if (active[k] && basis[k].front().m.divides(lm)) {
        divisor = &basis[k];
        break;
      }
    if (!divisor) {
      rem.push_back(std::move(f[pos]));
      ++pos;
      continue;
    }
    if (!budget.spend()) return std::nullopt;
    compact();
    const Integer& lf = f.front().c;
    const Integer& lg = divisor->front().c;
    Integer g = igcd(lf, lg);
    Integer a = lg / g, c = lf / g;
    if (sgn(a) < 0) {
      a = -a;
      c = -c;
    }
    f = cancel_lead(f, a, *divisor, c, lm / divisor->front().m);
    if (a != 1)
      for (auto& tm : rem) tm.c *= a;
    if (++since_content >= 8 && coefficient_bits(f) > 256) {
      // keep coefficients small: divide the remainder and the tail by their common content
      Integer content = 0;
      for (const auto& tm : f) content = igcd(content, tm.c);
      for (const auto& tm : rem) content = igcd(content, tm.c);
      if (content > 1) {
        for (auto& tm : f) mpz_divexact(tm.c.get_mpz_t(), tm.c.get_mpz_t(), content.get_mpz_t());
        for (auto& tm : rem) mpz_divexact(tm.c.get_mpz_t(), tm.c.get_mpz_t(), content.get_mpz_t());
      }
      since_content = 0;
    }
  }
  make_primitive(rem);
  return rem;
}

struct Pair {
  std::size_t i, j;
  Monomial lcm;
  unsigned sugar;
};

inline unsigned total_degree(const Poly& p) {
  unsigned td = 0;
  for (const auto& tm : p) td = std::max(td, tm.m.degree());
  return td;
}

}  // namespace detail::gb

/// Buchberger's algorithm with the sugar strategy and the Gebauer-Moeller criteria, over Z with
/// primitive polynomials. Returns the reduced basis; when a limit is hit the partial basis is
/// returned with complete = false.
inline GroebnerBasis groebner_basis(const std::vector<ZPoly>& generators, const GroebnerConfig& cfg,
                                    StepBudget& budget) {
  using namespace detail::gb;
  const std::uint64_t start = budget.remaining;
  std::vector<Poly> basis;
  std::vector<bool> active;
  std::vector<unsigned> sugar;
  std::vector<Pair> pairs;
  GroebnerBasis out;

  auto finish_partial = [&]() {
    for (std::size_t k = 0; k < basis.size(); ++k)
      if (active[k]) out.polys.push_back(to_zpoly(basis[k]));
    out.complete = false;
    out.steps = start - budget.remaining;
    return out;
  };
  auto unit = [&]() {
    out.polys = {ZPoly::constant(Integer(1))};
    out.steps = start - budget.remaining;
    return out;
  };
  auto too_big = [&](const Poly& r) {
    return static_cast<int>(total_degree(r)) > cfg.max_poly_degree || coefficient_bits(r) > cfg.max_coefficient_bits;
  };

  auto insert = [&](Poly h, unsigned h_sugar) {
    const std::size_t hi = basis.size();
    const Monomial hm = h.front().m;
    // pairs (h, g) with the chain and product criteria
    std::vector<Pair> fresh;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if (!active[k]) continue;
      const Monomial& gm = basis[k].front().m;
      const Monomial l = Monomial::lcm(hm, gm);
      const unsigned s = std::max(h_sugar + (l / hm).degree(), sugar[k] + (l / gm).degree());
      fresh.push_back({k, hi, l, s});
    }
    // keep only pairs whose lcm is minimal among the new ones (ties: keep one)
    std::vector<Pair> kept;
    for (std::size_t a = 0; a < fresh.size(); ++a) {
      bool drop = false;
      for (std::size_t b = 0; b < fresh.size() && !drop; ++b) {
        if (a == b) continue;
        if (fresh[b].lcm.divides(fresh[a].lcm) && (fresh[b].lcm != fresh[a].lcm || b < a)) drop = true;
      }
      if (!drop) kept.push_back(fresh[a]);
    }
    // product criterion: coprime leading monomials reduce to zero
    std::vector<Pair> accepted;
    for (const auto& p : kept)
      if (!Monomial::coprime(basis[p.i].front().m, hm)) accepted.push_back(p);
    // old pairs made redundant by h
    std::vector<Pair> remaining;
    for (const auto& p : pairs) {
      if (hm.divides(p.lcm)) {
        const Monomial l1 = Monomial::lcm(basis[p.i].front().m, hm);
        const Monomial l2 = Monomial::lcm(basis[p.j].front().m, hm);
        if (l1 != p.lcm && l2 != p.lcm) continue;
      }
      remaining.push_back(p);
    }
    pairs = std::move(remaining);
    pairs.insert(pairs.end(), accepted.begin(), accepted.end());
    for (std::size_t k = 0; k < basis.size(); ++k)
      if (active[k] && hm.divides(basis[k].front().m)) active[k] = false;
    basis.push_back(std::move(h));
    active.push_back(true);
    sugar.push_back(h_sugar);
  };

  // interreduce the generators on the way in
  std::vector<Poly> gens;
  for (const auto& g : generators) {
    if (g.is_zero()) continue;
    Poly p = in_order(g);
    make_primitive(p);
    gens.push_back(std::move(p));
  }
  std::sort(gens.begin(), gens.end(), [](const Poly& a, const Poly& b) { return order_greater(b.front().m, a.front().m); });
  for (auto& g : gens) {
    auto r = normal_form(g, basis, active, budget);
    if (!r) return finish_partial();
    if (r->empty()) continue;
    if (r->front().m.is_one()) return unit();
    const unsigned td = total_degree(*r);
    insert(std::move(*r), td);
  }

  while (!pairs.empty()) {
    auto best = std::min_element(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
      if (a.sugar != b.sugar) return a.sugar < b.sugar;
      return order_greater(b.lcm, a.lcm);
    });
    const Pair p = *best;
    pairs.erase(best);
    const Poly& f = basis[p.i];
    const Poly& g = basis[p.j];
    const Integer gc = igcd(f.front().c, g.front().c);
    const Integer a = g.front().c / gc, c = f.front().c / gc;
    // S = a * (lcm/lm f) f - c * (lcm/lm g) g
    Poly fs;
    fs.reserve(f.size());
    const Monomial sf = p.lcm / f.front().m;
    for (const auto& tm : f) fs.push_back({tm.m * sf, tm.c});
    Poly s = cancel_lead(fs, a, g, c, p.lcm / g.front().m);
    if (!budget.spend()) return finish_partial();
    auto r = normal_form(std::move(s), basis, active, budget);
    if (!r) return finish_partial();
    if (r->empty()) continue;
    if (r->front().m.is_one()) return unit();
    if (too_big(*r)) return finish_partial();
    const unsigned td = total_degree(*r);
    insert(std::move(*r), std::max(p.sugar, td));
    if (basis.size() > cfg.max_basis_size) return finish_partial();
  }

  // reduced basis: drop non-minimal elements, then tail-reduce
  std::vector<Poly> minimal;
  for (std::size_t k = 0; k < basis.size(); ++k)
    if (active[k]) minimal.push_back(basis[k]);
  std::vector<Poly> reduced;
  for (std::size_t k = 0; k < minimal.size(); ++k) {
    std::vector<bool> flags(minimal.size(), true);
    flags[k] = false;
    auto r = normal_form(minimal[k], minimal, flags, budget, true);
    if (!r) return finish_partial();
    reduced.push_back(std::move(*r));
  }
  std::sort(reduced.begin(), reduced.end(),
            [](const Poly& a, const Poly& b) { return order_greater(a.front().m, b.front().m); });
  for (auto& p : reduced) out.polys.push_back(to_zpoly(std::move(p)));
  out.steps = start - budget.remaining;
  return out;
}

/// True when f lies in the ideal generated by a complete basis.
inline bool reduces_to_zero(const ZPoly& f, const GroebnerBasis& gb) {
  using namespace detail::gb;
  std::vector<Poly> basis;
  for (const auto& g : gb.polys) basis.push_back(in_order(g));
  std::vector<bool> active(basis.size(), true);
  StepBudget unlimited(~std::uint64_t{0});
  return normal_form(in_order(f), basis, active, unlimited)->empty();
}

/// Polynomial system over Q; unknown i is variable i of every equation.
struct PolySystem {
  std::vector<std::string> unknowns;
  std::vector<QPoly> equations;
};

enum class DimensionKind { ZeroDim, PositiveDim, BudgetExceeded };

inline std::string to_string(DimensionKind k) {
  switch (k) {
    case DimensionKind::ZeroDim: return "zero-dimensional";
    case DimensionKind::PositiveDim: return "positive-dimensional";
    default: return "budget exceeded";
  }
}

struct SystemSolution {
  DimensionKind kind = DimensionKind::ZeroDim;
  std::vector<std::vector<Rat>> points;    // every Q-rational point, for ZeroDim
  std::vector<std::size_t> free_unknowns;  // a maximal independent set, for PositiveDim
  std::vector<ZPoly> basis;                // reduced basis (partial when the budget ran out)
};

/// A maximal set of unknowns no leading monomial lives in, grown from the lowest variable.
inline std::vector<std::size_t> independent_unknowns(const std::vector<ZPoly>& basis, std::size_t count) {
  std::vector<std::size_t> chosen;
  std::vector<bool> in_set(count, false);
  for (std::size_t v = count; v-- > 0;) {
    in_set[v] = true;
    bool independent = true;
    for (const auto& g : basis) {
      const Monomial lm = leading_monomial(g);
      bool inside = true;
      for (std::size_t k = 0; k < kMaxVars && inside; ++k)
        if (lm.e[k] && (k >= count || !in_set[k])) inside = false;
      if (inside) {
        independent = false;
        break;
      }
    }
    if (independent)
      chosen.push_back(v);
    else
      in_set[v] = false;
  }
  std::reverse(chosen.begin(), chosen.end());
  return chosen;
}

inline bool is_unit_ideal(const std::vector<ZPoly>& basis) {
  return basis.size() == 1 && basis[0].is_constant() && !basis[0].is_zero();
}

namespace detail::gb {

inline ZPoly specialize(const ZPoly& p, std::size_t v, const Rat& value) {
  QPoly q = to_rational(p).evaluate(v, value);
  if (q.is_zero()) return {};
  return primitive_part(q);
}

/// Rational-coefficient normal form modulo a basis whose elements are monic and sorted in the
/// basis order; the result is sorted the same way.
using QTerms = std::vector<QPoly::Term>;

inline QTerms q_normal_form(QTerms f, const std::vector<QTerms>& basis, StepBudget& budget, bool& ok) {
  auto greater = [](const Monomial& a, const Monomial& b) { return order_greater(a, b); };
  std::map<Monomial, Rat, decltype(greater)> work(greater);
  for (auto& tm : f) work[tm.m] += tm.c;
  QTerms rem;
  while (!work.empty()) {
    auto it = work.begin();
    if (it->second == 0) {
      work.erase(it);
      continue;
    }
    const QTerms* divisor = nullptr;
    for (const auto& g : basis)
      if (g.front().m.divides(it->first)) {
        divisor = &g;
        break;
      }
    if (!divisor) {
      rem.push_back({it->first, it->second});
      work.erase(it);
      continue;
    }
    if (!budget.spend()) {
      ok = false;
      return {};
    }
    const Rat factor = it->second;
    const Monomial shift = it->first / divisor->front().m;
    work.erase(it);
    for (std::size_t k = 1; k < divisor->size(); ++k) {
      const auto& tm = (*divisor)[k];
      Rat& slot = work[tm.m * shift];
      slot -= factor * tm.c;
    }
  }
  return rem;
}

/// Minimal polynomial of variable v modulo a zero-dimensional ideal, by finding the first linear
/// dependency among the normal forms of 1, x_v, x_v^2, ...
inline std::optional<UniPoly> minimal_polynomial(const std::vector<ZPoly>& basis, std::size_t v,
                                                 const GroebnerConfig& cfg, StepBudget& budget) {
  std::vector<QTerms> monic;
  for (const auto& g : basis) {
    Poly z = in_order(g);
    QTerms q;
    const Rat lead(z.front().c);
    for (const auto& tm : z) q.push_back({tm.m, Rat(tm.c) / lead});
    monic.push_back(std::move(q));
  }
  struct Row {
    Monomial pivot;
    std::map<Monomial, Rat> vec;
    std::vector<Rat> combo;  // coefficients on the powers of x_v
  };
  std::vector<Row> rows;
  QTerms current = {{Monomial{}, Rat(1)}};
  for (std::size_t k = 0; k <= cfg.max_quotient_dimension; ++k) {
    std::map<Monomial, Rat> vec;
    for (const auto& tm : current) vec[tm.m] = tm.c;
    std::vector<Rat> combo(k + 1);
    combo[k] = 1;
    for (const auto& row : rows) {
      auto it = vec.find(row.pivot);
      if (it == vec.end()) continue;
      if (!budget.spend(row.vec.size())) return std::nullopt;
      const Rat factor = it->second;
      for (const auto& [m, c] : row.vec) {
        Rat& slot = vec[m];
        slot -= factor * c;
        if (slot == 0) vec.erase(m);
      }
      for (std::size_t i = 0; i < row.combo.size(); ++i) combo[i] -= factor * row.combo[i];
    }
    if (vec.empty()) return UniPoly(std::move(combo));
    Monomial pivot = vec.begin()->first;
    for (const auto& [m, c] : vec)
      if (order_greater(m, pivot)) pivot = m;
    const Rat scale = vec[pivot];
    for (auto& [m, c] : vec) c /= scale;
    for (auto& c : combo) c /= scale;
    rows.push_back({pivot, std::move(vec), std::move(combo)});
    QTerms next;
    for (const auto& tm : current) next.push_back({tm.m * Monomial::var(v), tm.c});
    bool ok = true;
    current = q_normal_form(std::move(next), monic, budget, ok);
    if (!ok) return std::nullopt;
  }
  return std::nullopt;
}

/// Enumerates the Q-rational points of a zero-dimensional ideal given by a reduced basis: the
/// rational roots of the minimal polynomial of the lowest unassigned variable are substituted in
/// turn and the smaller system is solved recursively. Returns false when a limit is hit.
inline bool extract_points(const std::vector<ZPoly>& basis, std::vector<std::optional<Rat>>& assignment,
                           std::vector<std::vector<Rat>>& points, const GroebnerConfig& cfg, StepBudget& budget) {
  if (is_unit_ideal(basis)) return true;
  std::optional<std::size_t> var;
  for (std::size_t v = assignment.size(); v-- > 0 && !var;)
    if (!assignment[v]) var = v;
  if (!var) {
    if (!basis.empty()) return true;  // a nonzero constant cannot survive a complete assignment
    std::vector<Rat> pt;
    for (const auto& a : assignment) pt.push_back(*a);
    points.push_back(std::move(pt));
    return true;
  }
  // a univariate element in the chosen variable saves the linear algebra
  std::optional<UniPoly> eliminant;
  for (const auto& g : basis) {
    bool only_v = g.uses_var(*var);
    for (std::size_t k = 0; k < kMaxVars && only_v; ++k)
      if (k != *var && g.uses_var(k)) only_v = false;
    if (only_v) {
      eliminant = to_univariate(to_rational(g), *var);
      break;
    }
  }
  if (!eliminant) eliminant = minimal_polynomial(basis, *var, cfg, budget);
  if (!eliminant) return false;
  for (const Rat& root : rational_roots(*eliminant)) {
    std::vector<ZPoly> next;
    for (const auto& g : basis) {
      ZPoly s = specialize(g, *var, root);
      if (!s.is_zero()) next.push_back(std::move(s));
    }
    GroebnerBasis sub = groebner_basis(next, cfg, budget);
    if (!sub.complete) return false;
    assignment[*var] = root;
    if (!extract_points(sub.polys, assignment, points, cfg, budget)) return false;
    assignment[*var].reset();
  }
  return true;
}

}  // namespace detail::gb

/// Solves the system: lex basis, dimension analysis, and on zero-dimensional systems every
/// Q-rational solution vector.
inline SystemSolution groebner_solve(const PolySystem& sys, const GroebnerConfig& cfg, StepBudget& budget) {
  if (sys.unknowns.size() > kMaxVars) throw DomainError("too many unknowns for the polynomial engine");
  std::vector<ZPoly> gens;
  for (const auto& e : sys.equations)
    if (!e.is_zero()) gens.push_back(primitive_part(e));
  SystemSolution out;
  GroebnerBasis gb = groebner_basis(gens, cfg, budget);
  out.basis = gb.polys;
  if (!gb.complete) {
    out.kind = DimensionKind::BudgetExceeded;
    return out;
  }
  if (is_unit_ideal(gb.polys)) return out;
  out.free_unknowns = independent_unknowns(gb.polys, sys.unknowns.size());
  if (!out.free_unknowns.empty()) {
    out.kind = DimensionKind::PositiveDim;
    return out;
  }
  std::vector<std::optional<Rat>> assignment(sys.unknowns.size());
  if (!detail::gb::extract_points(gb.polys, assignment, out.points, cfg, budget)) {
    out.kind = DimensionKind::BudgetExceeded;
    out.points.clear();
  }
  return out;
}

inline SystemSolution groebner_solve(const PolySystem& sys, const GroebnerConfig& cfg = {}) {
  StepBudget budget(cfg.step_budget);
  return groebner_solve(sys, cfg, budget);
}

}  // namespace aode
