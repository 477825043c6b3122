#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "aode/factor.hpp"
#include "aode/groebner.hpp"
#include "aode/mpoly.hpp"

namespace aode {

/// Arithmetic in Z/pZ for a prime p below 2^62.
struct PrimeField {
  std::uint64_t p;

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    const std::uint64_t s = a + b;
    return s >= p ? s - p : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + p - b; }
  std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p - a; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
  }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1;
    for (; e; e >>= 1, a = mul(a, a))
      if (e & 1) r = mul(r, a);
    return r;
  }
  std::uint64_t inv(std::uint64_t a) const { return pow(a, p - 2); }
  std::uint64_t from(const Integer& x) const { return mpz_fdiv_ui(x.get_mpz_t(), p); }
  /// Image of a rational with a denominator prime to p.
  std::optional<std::uint64_t> from(const Rat& x) const {
    const std::uint64_t d = from(Integer(x.get_den()));
    if (d == 0) return std::nullopt;
    return mul(from(Integer(x.get_num())), inv(d));
  }
};

/// The k-th working prime: the largest prime below 2^62 - k * 2^32, found once and cached.
inline std::uint64_t working_prime(std::size_t k) {
  static std::vector<std::uint64_t> cache;
  while (cache.size() <= k) {
    Integer start = (Integer(1) << 62) - (Integer(static_cast<unsigned long>(cache.size()) + 1) << 32);
    Integer q;
    mpz_nextprime(q.get_mpz_t(), start.get_mpz_t());
    cache.push_back(q.get_ui());
  }
  return cache[k];
}

/// Exponent vector packed for the basis order. Word 0 holds the exponent of variable 0 and the
/// total degree of the others; words 1 to 3 hold one byte per variable, the last variable in the
/// most significant byte. Orders, products and divisibility become word operations; every
/// exponent and degree must stay below 128.
struct PackedMonomial {
  std::array<std::uint64_t, 4> w{};

  static constexpr std::uint64_t kHigh = 0x8080808080808080ULL;

  static constexpr int byte_of(std::size_t var) { return static_cast<int>(kMaxVars - 1 - var); }

  static bool fits(const Monomial& m) {
    unsigned deg = 0;
    for (std::size_t k = 1; k < kMaxVars; ++k) deg += m.e[k];
    return m.e[0] < 128 && deg < 128;
  }
  static PackedMonomial pack(const Monomial& m) {
    PackedMonomial out;
    std::uint64_t deg = 0;
    for (std::size_t k = 1; k < kMaxVars; ++k) {
      const int b = byte_of(k);  // 0 is the most significant byte of word 1
      out.w[1 + static_cast<std::size_t>(b / 8)] |= std::uint64_t{m.e[k]} << (8 * (7 - b % 8));
      deg += m.e[k];
    }
    out.w[0] = (std::uint64_t{m.e[0]} << 56) | (deg << 48);
    return out;
  }
  unsigned exponent(std::size_t k) const {
    if (k == 0) return static_cast<unsigned>(w[0] >> 56);
    const int b = byte_of(k);
    return static_cast<unsigned>((w[1 + static_cast<std::size_t>(b / 8)] >> (8 * (7 - b % 8))) & 0xff);
  }
  Monomial unpack() const {
    Monomial m;
    for (std::size_t k = 0; k < kMaxVars; ++k) m.e[k] = static_cast<std::uint16_t>(exponent(k));
    return m;
  }
  static PackedMonomial var(std::size_t k) { return pack(Monomial::var(k)); }

  unsigned degree() const { return static_cast<unsigned>((w[0] >> 56) + ((w[0] >> 48) & 0xff)); }
  bool is_one() const { return (w[0] | w[1] | w[2] | w[3]) == 0; }
  bool divides(const PackedMonomial& o) const {
    for (std::size_t i = 0; i < 4; ++i)
      if ((((o.w[i] | kHigh) - w[i]) & kHigh) != kHigh) return false;
    return true;
  }
  friend PackedMonomial operator*(const PackedMonomial& a, const PackedMonomial& b) {
    PackedMonomial m;
    for (std::size_t i = 0; i < 4; ++i) m.w[i] = a.w[i] + b.w[i];
    return m;
  }
  /// Requires b | a.
  friend PackedMonomial operator/(const PackedMonomial& a, const PackedMonomial& b) {
    PackedMonomial m;
    for (std::size_t i = 0; i < 4; ++i) m.w[i] = a.w[i] - b.w[i];
    return m;
  }
  static PackedMonomial lcm(const PackedMonomial& a, const PackedMonomial& b) {
    Monomial ua = a.unpack(), ub = b.unpack();
    return pack(Monomial::lcm(ua, ub));
  }
  static bool coprime(const PackedMonomial& a, const PackedMonomial& b) {
    if ((a.w[0] >> 56) && (b.w[0] >> 56)) return false;
    for (std::size_t i = 1; i < 4; ++i) {
      const std::uint64_t x = a.w[i], y = b.w[i];
      for (int k = 0; k < 8; ++k)
        if (((x >> (8 * k)) & 0xff) && ((y >> (8 * k)) & 0xff)) return false;
    }
    return true;
  }
  friend bool operator==(const PackedMonomial& a, const PackedMonomial& b) { return a.w == b.w; }
  friend bool operator!=(const PackedMonomial& a, const PackedMonomial& b) { return a.w != b.w; }
};

inline bool order_greater(const PackedMonomial& a, const PackedMonomial& b) {
  if (a.w[0] != b.w[0]) return a.w[0] > b.w[0];
  for (std::size_t i = 1; i < 4; ++i)
    if (a.w[i] != b.w[i]) return a.w[i] < b.w[i];
  return false;
}

namespace detail::modgb {

struct Term {
  PackedMonomial m;
  std::uint64_t c;
};
using Poly = std::vector<Term>;

inline Poly reduce(const ZPoly& z, const PrimeField& F) {
  Poly out;
  for (const auto& tm : z.terms()) {
    const std::uint64_t c = F.from(tm.c);
    if (c) out.push_back({PackedMonomial::pack(tm.m), c});
  }
  std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) { return order_greater(a.m, b.m); });
  return out;
}

inline void make_monic(Poly& f, const PrimeField& F) {
  if (f.empty() || f.front().c == 1) return;
  const std::uint64_t s = F.inv(f.front().c);
  for (auto& tm : f) tm.c = F.mul(tm.c, s);
}

/// f - c * x^shift * g for monic g whose leading term cancels the leading term of f.
inline Poly cancel_lead(const Poly& f, std::uint64_t c, const Poly& g, const PackedMonomial& shift, const PrimeField& F) {
  Poly out;
  out.reserve(f.size() + g.size());
  std::size_t i = 1, j = 1;
  while (i < f.size() || j < g.size()) {
    if (j == g.size()) {
      out.push_back(f[i++]);
      continue;
    }
    const PackedMonomial gm = g[j].m * shift;
    if (i == f.size() || order_greater(gm, f[i].m)) {
      out.push_back({gm, F.neg(F.mul(c, g[j].c))});
      ++j;
    } else if (order_greater(f[i].m, gm)) {
      out.push_back(f[i++]);
    } else {
      const std::uint64_t v = F.sub(f[i].c, F.mul(c, g[j].c));
      if (v) out.push_back({f[i].m, v});
      ++i;
      ++j;
    }
  }
  return out;
}

/// Full reduction by the active monic basis elements; std::nullopt when the budget runs out.
inline std::optional<Poly> normal_form(Poly f, const std::vector<Poly>& basis, const std::vector<bool>& active,
                                       const PrimeField& F, StepBudget& budget, bool keep_lead = false,
                                       bool monic = true) {
  Poly rem;
  std::size_t pos = 0;
  if (keep_lead && !f.empty()) {
    rem.push_back(f.front());
    pos = 1;
  }
  while (pos < f.size()) {
    const PackedMonomial lm = f[pos].m;
    const Poly* divisor = nullptr;
    for (std::size_t k = 0; k < basis.size(); ++k)
      if (active[k] && basis[k].front().m.divides(lm)) {
        divisor = &basis[k];
        break;
      }
    if (!divisor) {
      rem.push_back(f[pos++]);
      continue;
    }
    if (!budget.spend()) return std::nullopt;
    if (pos > 0) {
      f.erase(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(pos));
      pos = 0;
    }
    f = cancel_lead(f, f.front().c, *divisor, lm / divisor->front().m, F);
  }
  if (monic) make_monic(rem, F);
  return rem;
}

struct Pair {
  std::size_t i, j;
  PackedMonomial lcm;
  unsigned sugar;
};

}  // namespace detail::modgb

/// Reduced Groebner basis over Z/pZ, monic, in the same order as the exact engine.
struct ModularBasis {
  std::uint64_t prime = 0;
  std::vector<detail::modgb::Poly> polys;
  bool complete = true;

  bool is_unit() const { return polys.size() == 1 && polys[0].size() == 1 && polys[0][0].m.is_one(); }
  std::vector<Monomial> leading_monomials() const {
    std::vector<Monomial> out;
    for (const auto& p : polys) out.push_back(p.front().m.unpack());
    return out;
  }
};

inline ModularBasis modular_groebner(const std::vector<ZPoly>& generators, std::uint64_t prime,
                                     const GroebnerConfig& cfg, StepBudget& budget) {
  using namespace detail::modgb;
  const PrimeField F{prime};
  ModularBasis out;
  out.prime = prime;
  std::vector<Poly> basis;
  std::vector<bool> active;
  std::vector<unsigned> sugar;
  std::vector<Pair> pairs;

  auto partial = [&]() {
    for (std::size_t k = 0; k < basis.size(); ++k)
      if (active[k]) out.polys.push_back(basis[k]);
    out.complete = false;
    return out;
  };
  auto unit = [&]() {
    out.polys = {Poly{{PackedMonomial{}, 1}}};
    return out;
  };
  auto total_degree = [](const Poly& p) {
    unsigned td = 0;
    for (const auto& tm : p) td = std::max(td, tm.m.degree());
    return td;
  };
  auto insert = [&](Poly h, unsigned h_sugar) {
    const std::size_t hi = basis.size();
    const PackedMonomial hm = h.front().m;
    std::vector<Pair> fresh;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if (!active[k]) continue;
      const PackedMonomial& gm = basis[k].front().m;
      const PackedMonomial l = PackedMonomial::lcm(hm, gm);
      fresh.push_back({k, hi, l, std::max(h_sugar + (l / hm).degree(), sugar[k] + (l / gm).degree())});
    }
    std::vector<Pair> accepted;
    for (std::size_t a = 0; a < fresh.size(); ++a) {
      bool drop = false;
      for (std::size_t b = 0; b < fresh.size() && !drop; ++b)
        if (a != b && fresh[b].lcm.divides(fresh[a].lcm) && (fresh[b].lcm != fresh[a].lcm || b < a)) drop = true;
      if (!drop && !PackedMonomial::coprime(basis[fresh[a].i].front().m, hm)) accepted.push_back(fresh[a]);
    }
    std::vector<Pair> remaining;
    for (const auto& p : pairs) {
      if (hm.divides(p.lcm) && PackedMonomial::lcm(basis[p.i].front().m, hm) != p.lcm &&
          PackedMonomial::lcm(basis[p.j].front().m, hm) != p.lcm)
        continue;
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

  std::vector<Poly> gens;
  for (const auto& g : generators) {
    for (const auto& tm : g.terms())
      if (!PackedMonomial::fits(tm.m) || static_cast<int>(tm.m.degree()) > cfg.max_poly_degree) return partial();
    Poly p = reduce(g, F);
    if (p.empty()) continue;
    make_monic(p, F);
    gens.push_back(std::move(p));
  }
  std::sort(gens.begin(), gens.end(), [](const Poly& a, const Poly& b) { return order_greater(b.front().m, a.front().m); });
  for (auto& g : gens) {
    auto r = normal_form(g, basis, active, F, budget);
    if (!r) return partial();
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
    Poly fs;
    fs.reserve(f.size());
    const PackedMonomial sf = p.lcm / f.front().m;
    for (const auto& tm : f) fs.push_back({tm.m * sf, tm.c});
    Poly s = cancel_lead(fs, 1, g, p.lcm / g.front().m, F);
    if (!budget.spend()) return partial();
    auto r = normal_form(std::move(s), basis, active, F, budget);
    if (!r) return partial();
    if (r->empty()) continue;
    if (r->front().m.is_one()) return unit();
    const unsigned td = total_degree(*r);
    if (static_cast<int>(td) > cfg.max_poly_degree) return partial();
    insert(std::move(*r), std::max(p.sugar, td));
    if (basis.size() > cfg.max_basis_size) return partial();
  }
  std::vector<Poly> minimal;
  for (std::size_t k = 0; k < basis.size(); ++k)
    if (active[k]) minimal.push_back(basis[k]);
  for (std::size_t k = 0; k < minimal.size(); ++k) {
    std::vector<bool> flags(minimal.size(), true);
    flags[k] = false;
    auto r = normal_form(minimal[k], minimal, flags, F, budget, true);
    if (!r) return partial();
    out.polys.push_back(std::move(*r));
  }
  std::sort(out.polys.begin(), out.polys.end(),
            [](const Poly& a, const Poly& b) { return order_greater(a.front().m, b.front().m); });
  return out;
}

/// A maximal set among `candidates` (tried from the last one) containing no leading monomial.
inline std::vector<std::size_t> independent_among(const std::vector<Monomial>& leads,
                                                  const std::vector<std::size_t>& candidates) {
  std::vector<bool> in_set(kMaxVars, false);
  std::vector<std::size_t> chosen;
  for (auto it = candidates.rbegin(); it != candidates.rend(); ++it) {
    in_set[*it] = true;
    bool independent = true;
    for (const auto& lm : leads) {
      bool inside = true;
      for (std::size_t k = 0; k < kMaxVars && inside; ++k)
        if (lm.e[k] && !in_set[k]) inside = false;
      if (inside) {
        independent = false;
        break;
      }
    }
    if (independent)
      chosen.push_back(*it);
    else
      in_set[*it] = false;
  }
  std::reverse(chosen.begin(), chosen.end());
  return chosen;
}

/// Minimal polynomial (monic, low degree first) of variable v modulo a zero-dimensional ideal
/// given by its modular basis; std::nullopt when the degree would exceed max_degree or the
/// budget runs out.
inline std::optional<std::vector<std::uint64_t>> modular_minimal_polynomial(const ModularBasis& basis, std::size_t v,
                                                                           std::size_t max_degree,
                                                                           StepBudget& budget) {
  using namespace detail::modgb;
  const PrimeField F{basis.prime};
  auto greater = [](const PackedMonomial& a, const PackedMonomial& b) { return order_greater(a, b); };
  using Vec = std::map<PackedMonomial, std::uint64_t, decltype(greater)>;
  struct Row {
    PackedMonomial pivot;
    Vec vec;
    std::vector<std::uint64_t> combo;
  };
  std::vector<Row> rows;
  std::vector<bool> all(basis.polys.size(), true);
  Poly current{{PackedMonomial{}, 1}};
  for (std::size_t k = 0; k <= max_degree; ++k) {
    Vec vec(greater);
    for (const auto& tm : current) vec[tm.m] = tm.c;
    std::vector<std::uint64_t> combo(k + 1, 0);
    combo[k] = 1;
    for (const auto& row : rows) {
      auto it = vec.find(row.pivot);
      if (it == vec.end()) continue;
      if (!budget.spend()) return std::nullopt;
      const std::uint64_t factor = it->second;
      for (const auto& [m, c] : row.vec) {
        auto jt = vec.find(m);
        const std::uint64_t delta = F.mul(factor, c);
        if (jt == vec.end()) {
          vec.emplace(m, F.neg(delta));
        } else {
          jt->second = F.sub(jt->second, delta);
          if (jt->second == 0) vec.erase(jt);
        }
      }
      for (std::size_t i = 0; i < row.combo.size(); ++i) combo[i] = F.sub(combo[i], F.mul(factor, row.combo[i]));
    }
    if (vec.empty()) return combo;
    const PackedMonomial pivot = vec.begin()->first;
    const std::uint64_t s = F.inv(vec.begin()->second);
    for (auto& [m, c] : vec) c = F.mul(c, s);
    for (auto& c : combo) c = F.mul(c, s);
    rows.push_back({pivot, std::move(vec), std::move(combo)});
    Poly next;
    for (const auto& tm : current) next.push_back({tm.m * PackedMonomial::var(v), tm.c});
    auto r = normal_form(std::move(next), basis.polys, all, F, budget, false, false);
    if (!r) return std::nullopt;
    current = std::move(*r);
  }
  return std::nullopt;
}

/// n/d with |n|, d <= sqrt(m/2) and n == a d (mod m), when it exists.
inline std::optional<Rat> rational_reconstruction(const Integer& a, const Integer& m) {
  Integer bound;
  mpz_sqrt(bound.get_mpz_t(), Integer(m / 2).get_mpz_t());
  Integer r0 = m, r1 = a % m, s0 = 0, s1 = 1;
  if (r1 < 0) r1 += m;
  while (r1 > bound) {
    const Integer q = r0 / r1;
    Integer r2 = r0 - q * r1, s2 = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (s1 == 0 || abs(s1) > bound) return std::nullopt;
  if (igcd(r1, s1) != 1) return std::nullopt;
  Rat q(r1, s1);
  q.canonicalize();
  return q;
}

namespace detail::modgb {

/// Chinese remaindering of coefficient vectors of one fixed length.
struct CrtAccumulator {
  Integer modulus = 1;
  std::vector<Integer> residues;

  void add(const std::vector<std::uint64_t>& values, std::uint64_t prime) {
    const Integer p(static_cast<unsigned long>(prime));
    if (residues.empty()) {
      for (auto v : values) residues.emplace_back(static_cast<unsigned long>(v));
      modulus = p;
      return;
    }
    const PrimeField F{prime};
    const std::uint64_t inv_m = F.inv(F.from(modulus));
    for (std::size_t i = 0; i < values.size(); ++i) {
      // x = r + m * ((v - r) / m mod p)
      const std::uint64_t k = F.mul(F.sub(values[i], F.from(residues[i])), inv_m);
      residues[i] += modulus * Integer(static_cast<unsigned long>(k));
    }
    modulus *= p;
  }

  std::optional<std::vector<Rat>> reconstruct() const {
    std::vector<Rat> out;
    for (const auto& r : residues) {
      auto q = rational_reconstruction(r, modulus);
      if (!q) return std::nullopt;
      out.push_back(*q);
    }
    return out;
  }
};

}  // namespace detail::modgb

/// Limits for the modular layer.
struct ModularConfig {
  std::size_t max_primes = 96;  // per rational reconstruction
  std::size_t max_quotient_dimension = 256;
};

/// Outcome of a modular analysis of an ideal.
enum class IdealShape { Unit, ZeroDim, PositiveDim, Exhausted };

struct IdealAnalysis {
  IdealShape shape = IdealShape::Exhausted;
  ModularBasis basis;
  std::vector<std::size_t> free_unknowns;  // among the requested candidates, for PositiveDim
};

/// Shape of the ideal over Q as seen modulo working primes. A unit ideal is confirmed with a second
/// prime; this direction is rigorous for Q-points whose coordinates are integral at either prime.
inline IdealAnalysis analyze_ideal(const std::vector<ZPoly>& gens, const std::vector<std::size_t>& unknowns,
                                   const GroebnerConfig& cfg, StepBudget& budget) {
  IdealAnalysis out;
  for (std::size_t k = 0; k < 2; ++k) {
    out.basis = modular_groebner(gens, working_prime(k), cfg, budget);
    if (!out.basis.complete) {
      out.shape = IdealShape::Exhausted;
      return out;
    }
    if (!out.basis.is_unit()) break;
  }
  if (out.basis.is_unit()) {
    out.shape = IdealShape::Unit;
    return out;
  }
  out.free_unknowns = independent_among(out.basis.leading_monomials(), unknowns);
  out.shape = out.free_unknowns.empty() ? IdealShape::ZeroDim : IdealShape::PositiveDim;
  return out;
}

/// Minimal polynomial over Q of variable v modulo a zero-dimensional ideal, by Chinese remaindering
/// its images modulo working primes until the rational reconstruction is stable. Primes whose image
/// has a different degree from the majority seen so far are discarded.
inline std::optional<UniPoly> rational_minimal_polynomial(const std::vector<ZPoly>& gens, std::size_t v,
                                                          const GroebnerConfig& cfg, const ModularConfig& mcfg,
                                                          StepBudget& budget) {
  std::map<std::size_t, detail::modgb::CrtAccumulator> by_degree;
  std::map<std::size_t, std::vector<Rat>> last;
  for (std::size_t k = 0; k < mcfg.max_primes; ++k) {
    ModularBasis b = modular_groebner(gens, working_prime(k), cfg, budget);
    if (!b.complete) return std::nullopt;
    if (b.is_unit()) continue;  // an unlucky prime for this ideal
    auto mp = modular_minimal_polynomial(b, v, mcfg.max_quotient_dimension, budget);
    if (!mp) {
      if (budget.remaining == 0) return std::nullopt;
      continue;
    }
    const std::size_t deg = mp->size() - 1;
    auto& acc = by_degree[deg];
    acc.add(*mp, b.prime);
    auto rec = acc.reconstruct();
    if (!rec) continue;
    auto it = last.find(deg);
    if (it != last.end() && it->second == *rec) return UniPoly(std::move(*rec));
    last[deg] = std::move(*rec);
  }
  return std::nullopt;
}

enum class PointSearch { Done, NotZeroDim, Exhausted };

/// Every Q-rational point of the ideal generated by gens, in the unknowns left unassigned. The
/// lowest-degree minimal polynomial among the unknowns is solved, its rational roots are
/// substituted exactly, and the smaller system is solved recursively. Each returned point
/// annihilates every generator exactly.
inline PointSearch rational_points(std::vector<ZPoly> gens, std::vector<std::optional<Rat>>& assignment,
                                   std::vector<std::vector<Rat>>& points, const GroebnerConfig& cfg,
                                   const ModularConfig& mcfg, StepBudget& budget) {
  std::vector<ZPoly> live;
  for (auto& g : gens) {
    if (g.is_zero()) continue;
    if (g.is_constant()) return PointSearch::Done;
    live.push_back(std::move(g));
  }
  std::vector<std::size_t> open;
  for (std::size_t k = 0; k < assignment.size(); ++k)
    if (!assignment[k]) open.push_back(k);
  if (open.empty()) {
    if (live.empty()) {
      std::vector<Rat> pt;
      for (const auto& a : assignment) pt.push_back(*a);
      points.push_back(std::move(pt));
    }
    return PointSearch::Done;
  }
  // a generator in a single open unknown is branched on exactly, with no basis computation
  for (const auto& g : live) {
    std::size_t only = kMaxVars;
    bool univariate = true;
    for (std::size_t k : open)
      if (g.uses_var(k)) {
        if (only != kMaxVars) univariate = false;
        only = k;
      }
    if (!univariate || only == kMaxVars) continue;
    bool positive_dim = false;
    for (const Rat& root : rational_roots(to_univariate(to_rational(g), only))) {
      std::vector<ZPoly> next;
      for (const auto& h : live) next.push_back(detail::gb::specialize(h, only, root));
      assignment[only] = root;
      const PointSearch r = rational_points(std::move(next), assignment, points, cfg, mcfg, budget);
      assignment[only].reset();
      if (r == PointSearch::Exhausted) return r;
      if (r == PointSearch::NotZeroDim) positive_dim = true;
    }
    return positive_dim ? PointSearch::NotZeroDim : PointSearch::Done;
  }
  IdealAnalysis shape = analyze_ideal(live, open, cfg, budget);
  if (shape.shape == IdealShape::Exhausted) return PointSearch::Exhausted;
  if (shape.shape == IdealShape::Unit) return PointSearch::Done;
  if (shape.shape == IdealShape::PositiveDim) return PointSearch::NotZeroDim;
  // the unknown whose minimal polynomial has the smallest degree modulo the first prime
  std::size_t var = open.front();
  std::size_t best = ~std::size_t{0};
  for (std::size_t k : open) {
    auto mp = modular_minimal_polynomial(shape.basis, k, mcfg.max_quotient_dimension, budget);
    if (!mp) return PointSearch::Exhausted;
    if (mp->size() < best) {
      best = mp->size();
      var = k;
    }
    if (best <= 2) break;
  }
  auto minimal = rational_minimal_polynomial(live, var, cfg, mcfg, budget);
  if (!minimal) return PointSearch::Exhausted;
  for (const Rat& root : rational_roots(*minimal)) {
    std::vector<ZPoly> next;
    for (const auto& g : live) next.push_back(detail::gb::specialize(g, var, root));
    assignment[var] = root;
    const PointSearch r = rational_points(std::move(next), assignment, points, cfg, mcfg, budget);
    assignment[var].reset();
    if (r == PointSearch::Exhausted) return r;
    // a slice that is not zero-dimensional cannot come from a zero-dimensional ideal
    if (r == PointSearch::NotZeroDim) return PointSearch::Exhausted;
  }
  return PointSearch::Done;
}

}  // namespace aode
