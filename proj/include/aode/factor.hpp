#pragma once

// Factorization of univariate polynomials over Q: square-free decomposition, Cantor-Zassenhaus
// modulo a small prime, quadratic Hensel lifting and exhaustive factor recombination.

#include <algorithm>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "aode/upoly.hpp"

namespace aode {

namespace detail::modp {

using Poly = std::vector<std::uint64_t>;

struct Field {
  std::uint64_t p;

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % p; }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + p - b) % p; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return a * b % p; }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1;
    a %= p;
    while (e) {
      if (e & 1u) r = mul(r, a);
      a = mul(a, a);
      e >>= 1u;
    }
    return r;
  }
  std::uint64_t inv(std::uint64_t a) const { return pow(a, p - 2); }

  void trim(Poly& a) const {
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  Poly from(const std::vector<Integer>& z) const {
    Poly out(z.size());
    Integer m = static_cast<unsigned long>(p), r;
    for (std::size_t i = 0; i < z.size(); ++i) {
      mpz_fdiv_r(r.get_mpz_t(), z[i].get_mpz_t(), m.get_mpz_t());
      out[i] = r.get_ui();
    }
    trim(out);
    return out;
  }
  Poly sub(const Poly& a, const Poly& b) const {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i)
      r[i] = sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
    trim(r);
    return r;
  }
  Poly mul(const Poly& a, const Poly& b) const {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    trim(r);
    return r;
  }
  std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b) const {
    Poly rem = a;
    if (a.size() < b.size()) return {{}, rem};
    Poly quo(a.size() - b.size() + 1, 0);
    const std::uint64_t inv_lc = inv(b.back());
    const std::size_t db = b.size() - 1;
    for (std::size_t i = rem.size(); i-- > db;) {
      if (rem[i] == 0) continue;
      std::uint64_t q = mul(rem[i], inv_lc);
      for (std::size_t j = 0; j <= db; ++j) rem[i - db + j] = sub(rem[i - db + j], mul(q, b[j]));
      quo[i - db] = q;
    }
    rem.resize(db);
    trim(rem);
    trim(quo);
    return {quo, rem};
  }
  Poly rem(const Poly& a, const Poly& b) const { return divrem(a, b).second; }
  Poly monic(const Poly& a) const {
    if (a.empty()) return a;
    Poly r = a;
    const std::uint64_t il = inv(a.back());
    for (auto& c : r) c = mul(c, il);
    return r;
  }
  Poly gcd(Poly a, Poly b) const {
    while (!b.empty()) {
      Poly r = rem(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return monic(a);
  }
  /// (g, s, t) with s a + t b = g monic.
  std::tuple<Poly, Poly, Poly> xgcd(const Poly& a, const Poly& b) const {
    Poly r0 = a, r1 = b, s0{1}, s1, t0, t1{1};
    while (!r1.empty()) {
      auto [q, r] = divrem(r0, r1);
      r0 = std::move(r1);
      r1 = std::move(r);
      Poly s2 = sub(s0, mul(q, s1)), t2 = sub(t0, mul(q, t1));
      s0 = std::move(s1);
      s1 = std::move(s2);
      t0 = std::move(t1);
      t1 = std::move(t2);
    }
    const std::uint64_t il = inv(r0.back());
    for (auto* v : {&r0, &s0, &t0})
      for (auto& c : *v) c = mul(c, il);
    return {r0, s0, t0};
  }
  Poly derivative(const Poly& a) const {
    if (a.size() <= 1) return {};
    Poly r(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = mul(a[i], i % p);
    trim(r);
    return r;
  }
  Poly powmod(Poly base, Integer e, const Poly& m) const {
    Poly r{1};
    base = rem(base, m);
    while (sgn(e) > 0) {
      if (mpz_odd_p(e.get_mpz_t())) r = rem(mul(r, base), m);
      e >>= 1;
      if (sgn(e) > 0) base = rem(mul(base, base), m);
    }
    return r;
  }

  /// Distinct-degree factorization of a monic square-free polynomial.
  std::vector<std::pair<Poly, int>> distinct_degree(Poly f) const {
    std::vector<std::pair<Poly, int>> out;
    const Poly x{0, 1};
    Poly h = x;
    const Integer pz = static_cast<unsigned long>(p);
    for (int d = 1; static_cast<int>(f.size()) - 1 >= 2 * d; ++d) {
      h = powmod(h, pz, f);
      Poly g = gcd(sub(h, x), f);
      if (g.size() > 1) {
        out.emplace_back(g, d);
        f = divrem(f, g).first;
        h = rem(h, f);
      }
    }
    if (f.size() > 1) out.emplace_back(f, static_cast<int>(f.size()) - 1);
    return out;
  }

  /// Splits a product of distinct monic irreducibles all of degree d (odd p).
  void equal_degree(const Poly& g, int d, std::mt19937_64& rng, std::vector<Poly>& out) const {
    const int n = static_cast<int>(g.size()) - 1;
    if (n == d) {
      out.push_back(g);
      return;
    }
    Integer e = ipow(Integer(static_cast<unsigned long>(p)), static_cast<unsigned long>(d));
    e = (e - 1) / 2;
    std::uniform_int_distribution<std::uint64_t> dist(0, p - 1);
    for (;;) {
      Poly a(static_cast<std::size_t>(n));
      for (auto& c : a) c = dist(rng);
      trim(a);
      if (a.size() <= 1) continue;
      Poly b = powmod(a, e, g);
      b = sub(b, Poly{1});
      Poly h = gcd(b, g);
      if (h.size() > 1 && h.size() < g.size()) {
        equal_degree(h, d, rng, out);
        equal_degree(divrem(g, h).first, d, rng, out);
        return;
      }
    }
  }
};

}  // namespace detail::modp

namespace detail::zpoly {

using Poly = std::vector<Integer>;

inline void trim(Poly& a) {
  while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
}

inline Poly mod(const Poly& a, const Integer& m) {
  Poly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) mpz_fdiv_r(r[i].get_mpz_t(), a[i].get_mpz_t(), m.get_mpz_t());
  trim(r);
  return r;
}

inline Poly symmetric(const Poly& a, const Integer& m) {
  Poly r = mod(a, m);
  const Integer half = m / 2;
  for (auto& c : r)
    if (c > half) c -= m;
  trim(r);
  return r;
}

inline Poly add(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}

inline Poly sub(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

inline Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

/// Division by a monic polynomial, optionally reducing modulo m.
inline std::pair<Poly, Poly> divrem_monic(const Poly& a, const Poly& b, const Integer* m = nullptr) {
  Poly rem = a;
  if (a.size() < b.size()) return {{}, rem};
  Poly quo(a.size() - b.size() + 1);
  const std::size_t db = b.size() - 1;
  for (std::size_t i = rem.size(); i-- > db;) {
    if (m) mpz_fdiv_r(rem[i].get_mpz_t(), rem[i].get_mpz_t(), m->get_mpz_t());
    if (sgn(rem[i]) == 0) continue;
    Integer q = rem[i];
    for (std::size_t j = 0; j <= db; ++j) rem[i - db + j] -= q * b[j];
    quo[i - db] = q;
  }
  rem.resize(db);
  if (m) {
    rem = mod(rem, *m);
    quo = mod(quo, *m);
  }
  trim(rem);
  trim(quo);
  return {quo, rem};
}

inline Poly from_modp(const modp::Poly& a) {
  Poly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = static_cast<unsigned long>(a[i]);
  return r;
}

/// One quadratic Hensel step: f = g h mod m, s g + t h = 1 mod m, h monic; result modulo m^2.
inline void hensel_step(const Poly& f, Poly& g, Poly& h, Poly& s, Poly& t, const Integer& m) {
  const Integer m2 = m * m;
  Poly e = mod(sub(f, mul(g, h)), m2);
  auto [q, r] = divrem_monic(mod(mul(s, e), m2), h, &m2);
  Poly g2 = mod(add(add(g, mul(t, e)), mul(q, g)), m2);
  Poly h2 = mod(add(h, r), m2);
  Poly b = mod(sub(add(mul(s, g2), mul(t, h2)), Poly{Integer(1)}), m2);
  auto [c, d] = divrem_monic(mod(mul(s, b), m2), h2, &m2);
  s = mod(sub(s, d), m2);
  t = mod(sub(sub(t, mul(t, b)), mul(c, g2)), m2);
  g = std::move(g2);
  h = std::move(h2);
}

/// Lifts the monic modular factorization of monic f to modulus p^(2^k) = target.
inline std::vector<Poly> multifactor_lift(const Poly& f, const std::vector<modp::Poly>& factors,
                                          const modp::Field& fp, const Integer& target) {
  if (factors.size() == 1) return {mod(f, target)};
  const std::size_t half = factors.size() / 2;
  modp::Poly g0{1}, h0{1};
  for (std::size_t i = 0; i < half; ++i) g0 = fp.mul(g0, factors[i]);
  for (std::size_t i = half; i < factors.size(); ++i) h0 = fp.mul(h0, factors[i]);
  auto [one, s0, t0] = fp.xgcd(g0, h0);
  Poly g = from_modp(g0), h = from_modp(h0), s = from_modp(s0), t = from_modp(t0);
  Integer m = static_cast<unsigned long>(fp.p);
  while (m < target) {
    hensel_step(f, g, h, s, t, m);
    m *= m;
  }
  std::vector<modp::Poly> left(factors.begin(), factors.begin() + static_cast<long>(half));
  std::vector<modp::Poly> right(factors.begin() + static_cast<long>(half), factors.end());
  auto out = multifactor_lift(g, left, fp, target);
  auto rest = multifactor_lift(h, right, fp, target);
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

inline bool is_small_prime(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Factors a monic square-free integer polynomial into monic irreducibles over Z.
inline std::vector<Poly> zassenhaus_monic(const Poly& F) {
  const int n = static_cast<int>(F.size()) - 1;
  if (n <= 1) return {F};

  // Pick, among a few admissible primes, the one with the fewest modular factors.
  modp::Field best{0};
  std::vector<std::pair<modp::Poly, int>> best_ddf;
  std::size_t best_count = 0;
  int tried = 0;
  for (unsigned long p = 3; tried < 5; p += 2) {
    if (!is_small_prime(p)) continue;
    modp::Field fp{p};
    modp::Poly fm = fp.from(F);
    if (static_cast<int>(fm.size()) - 1 != n) continue;
    if (fp.gcd(fm, fp.derivative(fm)).size() != 1) continue;
    ++tried;
    auto ddf = fp.distinct_degree(fm);
    std::size_t count = 0;
    for (const auto& [g, d] : ddf) count += (g.size() - 1) / static_cast<std::size_t>(d);
    if (best.p == 0 || count < best_count) {
      best = fp;
      best_ddf = std::move(ddf);
      best_count = count;
    }
    if (count == 1) break;
  }
  if (best_count == 1) return {F};

  std::mt19937_64 rng(0x5eed);
  std::vector<modp::Poly> modular;
  for (const auto& [g, d] : best_ddf) best.equal_degree(g, d, rng, modular);

  // Coefficients of any monic factor are bounded by 2^n * ||F||_2.
  Integer norm2 = 0;
  for (const auto& c : F) norm2 += c * c;
  Integer norm;
  mpz_sqrt(norm.get_mpz_t(), norm2.get_mpz_t());
  norm += 1;
  const Integer bound = ipow(Integer(2), static_cast<unsigned long>(n)) * norm * 2 + 1;
  Integer modulus = static_cast<unsigned long>(best.p);
  while (modulus <= bound) modulus *= modulus;

  std::vector<Poly> lifted = multifactor_lift(F, modular, best, modulus);

  std::vector<Poly> result;
  Poly rest = F;
  std::size_t s = 1;
  while (2 * s <= lifted.size()) {
    bool found = false;
    std::vector<std::size_t> idx(s);
    for (std::size_t i = 0; i < s; ++i) idx[i] = i;
    for (;;) {
      Poly cand{Integer(1)};
      for (std::size_t i : idx) cand = mod(mul(cand, lifted[i]), modulus);
      cand = symmetric(cand, modulus);
      bool plausible = true;
      if (sgn(rest.front()) != 0 && (cand.empty() || sgn(cand.front()) == 0 ||
                                     !mpz_divisible_p(rest.front().get_mpz_t(), cand.front().get_mpz_t())))
        plausible = false;
      if (plausible) {
        auto [q, r] = divrem_monic(rest, cand);
        if (r.empty()) {
          result.push_back(cand);
          rest = q;
          std::vector<Poly> keep;
          for (std::size_t i = 0; i < lifted.size(); ++i)
            if (std::find(idx.begin(), idx.end(), i) == idx.end()) keep.push_back(lifted[i]);
          lifted = std::move(keep);
          found = true;
          break;
        }
      }
      // Advance to the next combination of s indices out of lifted.size().
      std::size_t k = s;
      while (k > 0 && idx[k - 1] == lifted.size() - s + k - 1) --k;
      if (k == 0) break;
      ++idx[k - 1];
      for (std::size_t j = k; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++s;
  }
  if (rest.size() > 1) result.push_back(rest);
  return result;
}

}  // namespace detail::zpoly

/// An irreducible factor over Q (monic) with its multiplicity.
struct Factor {
  UniPoly poly;
  int multiplicity;
};

/// Complete factorization over Q: p = unit * prod factor^multiplicity, every factor monic and
/// irreducible. Factors are sorted by degree, then coefficients.
inline std::vector<Factor> factor_over_q(const UniPoly& p) {
  if (p.is_zero()) throw DomainError("cannot factor the zero polynomial");
  std::vector<Factor> out;
  for (const auto& [sqf, mult] : squarefree_decomposition(p)) {
    auto [scale, f] = primitive_integer_form(sqf);
    const int n = static_cast<int>(f.size()) - 1;
    const Integer lc = f.back();
    // Monic transform F(x) = lc^(n-1) f(x / lc).
    detail::zpoly::Poly F(f.size());
    for (int i = 0; i < n; ++i)
      F[static_cast<std::size_t>(i)] = f[static_cast<std::size_t>(i)] * ipow(lc, static_cast<unsigned long>(n - 1 - i));
    F[static_cast<std::size_t>(n)] = 1;
    for (const auto& G : detail::zpoly::zassenhaus_monic(F)) {
      // Undo the transform: g(x) = pp(G(lc x)).
      std::vector<Rat> g(G.size());
      for (std::size_t i = 0; i < G.size(); ++i) g[i] = Rat(G[i] * ipow(lc, static_cast<unsigned long>(i)));
      out.push_back({UniPoly(std::move(g)).monic(), mult});
    }
  }
  std::sort(out.begin(), out.end(), [](const Factor& a, const Factor& b) {
    if (a.poly.degree() != b.poly.degree()) return a.poly.degree() < b.poly.degree();
    return std::lexicographical_compare(a.poly.coeffs().begin(), a.poly.coeffs().end(),
                                        b.poly.coeffs().begin(), b.poly.coeffs().end());
  });
  return out;
}

inline bool is_irreducible_over_q(const UniPoly& p) {
  if (p.degree() < 1) return false;
  auto f = factor_over_q(p);
  return f.size() == 1 && f.front().multiplicity == 1;
}

/// All roots of p in Q, ascending; p must be nonzero.
inline std::vector<Rat> rational_roots(const UniPoly& p) {
  if (p.is_zero()) throw DomainError("rational_roots of the zero polynomial: every rational is a root");
  std::vector<Rat> roots;
  if (p.degree() < 1) return roots;
  for (const auto& f : factor_over_q(p))
    if (f.poly.degree() == 1) roots.push_back(-f.poly.coeff(0));
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace aode
