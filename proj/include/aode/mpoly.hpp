#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "aode/number.hpp"
#include "aode/upoly.hpp"

namespace aode {

inline constexpr std::size_t kMaxVars = 24;

/// Exponent vector. Ordering is lexicographic with variable 0 the most significant.
struct Monomial {
  std::array<std::uint16_t, kMaxVars> e{};

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;

  static Monomial var(std::size_t i, unsigned power = 1) {
    Monomial m;
    m.e[i] = static_cast<std::uint16_t>(power);
    return m;
  }
  unsigned degree() const {
    unsigned d = 0;
    for (auto x : e) d += x;
    return d;
  }
  bool is_one() const {
    return std::all_of(e.begin(), e.end(), [](auto x) { return x == 0; });
  }
  bool divides(const Monomial& o) const {
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (e[i] > o.e[i]) return false;
    return true;
  }
  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVars; ++i) m.e[i] = static_cast<std::uint16_t>(a.e[i] + b.e[i]);
    return m;
  }
  /// Requires b | a.
  friend Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVars; ++i) m.e[i] = static_cast<std::uint16_t>(a.e[i] - b.e[i]);
    return m;
  }
  static Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVars; ++i) m.e[i] = std::max(a.e[i], b.e[i]);
    return m;
  }
  static bool coprime(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (a.e[i] && b.e[i]) return false;
    return true;
  }
};

/// Sparse multivariate polynomial; terms are kept sorted by decreasing lex monomial.
template <class C>
class MPoly {
 public:
  struct Term {
    Monomial m;
    C c;
  };

  MPoly() = default;
  static MPoly constant(C c) {
    MPoly p;
    if (!coeff_is_zero(c)) p.t_.push_back({Monomial{}, std::move(c)});
    return p;
  }
  static MPoly var(std::size_t i, unsigned power = 1) {
    MPoly p;
    p.t_.push_back({Monomial::var(i, power), C(1)});
    return p;
  }
  static MPoly term(Monomial m, C c) {
    MPoly p;
    if (!coeff_is_zero(c)) p.t_.push_back({m, std::move(c)});
    return p;
  }
  /// Builds from unsorted terms, merging duplicates.
  static MPoly from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.m > b.m; });
    MPoly p;
    for (auto& tm : terms) {
      if (!p.t_.empty() && p.t_.back().m == tm.m) {
        p.t_.back().c += tm.c;
        if (coeff_is_zero(p.t_.back().c)) p.t_.pop_back();
      } else if (!coeff_is_zero(tm.c)) {
        p.t_.push_back(std::move(tm));
      }
    }
    return p;
  }

  const std::vector<Term>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].m.is_one()); }
  std::size_t size() const { return t_.size(); }
  const Term& lead() const { return t_.front(); }

  int degree_in(std::size_t v) const {
    int d = -1;
    for (const auto& tm : t_) d = std::max(d, static_cast<int>(tm.m.e[v]));
    return d;
  }
  int total_degree() const {
    int d = -1;
    for (const auto& tm : t_) d = std::max(d, static_cast<int>(tm.m.degree()));
    return d;
  }
  bool uses_var(std::size_t v) const {
    return std::any_of(t_.begin(), t_.end(), [v](const Term& tm) { return tm.m.e[v] != 0; });
  }

  friend bool operator==(const MPoly& a, const MPoly& b) {
    if (a.t_.size() != b.t_.size()) return false;
    for (std::size_t i = 0; i < a.t_.size(); ++i)
      if (a.t_[i].m != b.t_[i].m || a.t_[i].c != b.t_[i].c) return false;
    return true;
  }
  friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

  MPoly operator-() const {
    MPoly r = *this;
    for (auto& tm : r.t_) tm.c = -tm.c;
    return r;
  }
  friend MPoly operator+(const MPoly& a, const MPoly& b) { return merge(a, b, false); }
  friend MPoly operator-(const MPoly& a, const MPoly& b) { return merge(a, b, true); }
  MPoly& operator+=(const MPoly& o) { return *this = *this + o; }
  MPoly& operator-=(const MPoly& o) { return *this = *this - o; }

  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (b.t_.size() == 1) return a.mul_term(b.t_[0].m, b.t_[0].c);
    if (a.t_.size() == 1) return b.mul_term(a.t_[0].m, a.t_[0].c);
    std::map<Monomial, C, std::greater<>> acc;
    for (const auto& x : a.t_)
      for (const auto& y : b.t_) {
        auto [it, inserted] = acc.try_emplace(x.m * y.m, x.c * y.c);
        if (!inserted) it->second += x.c * y.c;
      }
    MPoly r;
    r.t_.reserve(acc.size());
    for (auto& [m, c] : acc)
      if (!coeff_is_zero(c)) r.t_.push_back({m, std::move(c)});
    return r;
  }
  MPoly& operator*=(const MPoly& o) { return *this = *this * o; }

  MPoly mul_term(const Monomial& m, const C& c) const {
    if (coeff_is_zero(c)) return {};
    MPoly r;
    r.t_.reserve(t_.size());
    for (const auto& tm : t_) r.t_.push_back({tm.m * m, tm.c * c});
    return r;
  }
  MPoly scaled(const C& c) const { return mul_term(Monomial{}, c); }

  MPoly pow(unsigned e) const {
    MPoly result = constant(C(1)), base = *this;
    while (e) {
      if (e & 1u) result *= base;
      e >>= 1u;
      if (e) base *= base;
    }
    return result;
  }

  /// Replaces variable v by the constant value.
  MPoly evaluate(std::size_t v, const C& value) const {
    std::vector<Term> out;
    out.reserve(t_.size());
    for (const auto& tm : t_) {
      Term n{tm.m, tm.c};
      if (n.m.e[v]) {
        n.c *= power(value, n.m.e[v]);
        n.m.e[v] = 0;
      }
      out.push_back(std::move(n));
    }
    return from_terms(std::move(out));
  }

  /// Coefficient of var^k as a polynomial in the remaining variables.
  MPoly coefficient(std::size_t v, unsigned k) const {
    std::vector<Term> out;
    for (const auto& tm : t_)
      if (tm.m.e[v] == k) {
        Term n = tm;
        n.m.e[v] = 0;
        out.push_back(std::move(n));
      }
    return from_terms(std::move(out));
  }

  /// Moves variables according to `to` (old index -> new index).
  MPoly renamed(const std::vector<std::size_t>& to) const {
    std::vector<Term> out;
    out.reserve(t_.size());
    for (const auto& tm : t_) {
      Term n{Monomial{}, tm.c};
      for (std::size_t i = 0; i < to.size(); ++i)
        if (tm.m.e[i]) n.m.e[to[i]] = static_cast<std::uint16_t>(n.m.e[to[i]] + tm.m.e[i]);
      out.push_back(std::move(n));
    }
    return from_terms(std::move(out));
  }

  /// Exact multivariate division; throws if b does not divide this.
  MPoly exact_div(const MPoly& b) const {
    if (b.is_zero()) throw DomainError("multivariate division by zero");
    MPoly rem = *this, quo;
    const auto& lb = b.lead();
    while (!rem.is_zero()) {
      const auto& lr = rem.lead();
      if (!lb.m.divides(lr.m)) throw DomainError("inexact multivariate division");
      MPoly q = term(lr.m / lb.m, C(lr.c / lb.c));
      quo += q;
      rem -= b * q;
    }
    return quo;
  }

 private:
  static C power(const C& x, unsigned e) {
    C r(1);
    for (unsigned i = 0; i < e; ++i) r *= x;
    return r;
  }

  static MPoly merge(const MPoly& a, const MPoly& b, bool subtract) {
    MPoly r;
    r.t_.reserve(a.t_.size() + b.t_.size());
    std::size_t i = 0, j = 0;
    while (i < a.t_.size() || j < b.t_.size()) {
      if (j == b.t_.size() || (i < a.t_.size() && a.t_[i].m > b.t_[j].m)) {
        r.t_.push_back(a.t_[i++]);
      } else if (i == a.t_.size() || b.t_[j].m > a.t_[i].m) {
        r.t_.push_back({b.t_[j].m, subtract ? C(-b.t_[j].c) : b.t_[j].c});
        ++j;
      } else {
        C c = subtract ? C(a.t_[i].c - b.t_[j].c) : C(a.t_[i].c + b.t_[j].c);
        if (!coeff_is_zero(c)) r.t_.push_back({a.t_[i].m, std::move(c)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  std::vector<Term> t_;
};

using QPoly = MPoly<Rat>;
using ZPoly = MPoly<Integer>;

/// Prints with the given variable names, in the equation grammar.
template <class C>
std::string to_string(const MPoly<C>& p, const std::vector<std::string>& names) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& tm : p.terms()) {
    const bool neg = sgn(tm.c) < 0;
    C mag = neg ? C(-tm.c) : tm.c;
    if (first)
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (!tm.m.e[i]) continue;
      if (!mono.empty()) mono += "*";
      mono += names[i];
      if (tm.m.e[i] > 1) mono += "^" + std::to_string(tm.m.e[i]);
    }
    if (mono.empty())
      out += mag.get_str();
    else if (mag == 1)
      out += mono;
    else
      out += mag.get_str() + "*" + mono;
  }
  return out;
}

/// Clears denominators and content, making the leading coefficient positive.
inline ZPoly primitive_part(const QPoly& p) {
  if (p.is_zero()) return {};
  Integer den = 1, g = 0;
  for (const auto& tm : p.terms()) den = ilcm(den, Integer(tm.c.get_den()));
  std::vector<ZPoly::Term> out;
  out.reserve(p.size());
  for (const auto& tm : p.terms()) {
    Integer v = Integer(tm.c.get_num()) * (den / Integer(tm.c.get_den()));
    g = igcd(g, v);
    out.push_back({tm.m, std::move(v)});
  }
  if (sgn(out.front().c) < 0) g = -g;
  for (auto& tm : out) tm.c /= g;
  return ZPoly::from_terms(std::move(out));
}

inline QPoly to_rational(const ZPoly& p) {
  std::vector<QPoly::Term> out;
  out.reserve(p.size());
  for (const auto& tm : p.terms()) out.push_back({tm.m, Rat(tm.c)});
  return QPoly::from_terms(std::move(out));
}

/// Views a polynomial in variable v only as a univariate polynomial.
inline UniPoly to_univariate(const QPoly& p, std::size_t v) {
  std::vector<Rat> c(static_cast<std::size_t>(std::max(p.degree_in(v), 0)) + 1);
  for (const auto& tm : p.terms()) {
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (i != v && tm.m.e[i]) throw DomainError("polynomial is not univariate");
    c[tm.m.e[v]] += tm.c;
  }
  return UniPoly(std::move(c));
}

inline QPoly from_univariate(const UniPoly& u, std::size_t v) {
  std::vector<QPoly::Term> out;
  for (std::size_t i = 0; i < u.coeffs().size(); ++i)
    if (!is_zero(u.coeffs()[i])) out.push_back({Monomial::var(v, static_cast<unsigned>(i)), u.coeffs()[i]});
  return QPoly::from_terms(std::move(out));
}

}  // namespace aode
