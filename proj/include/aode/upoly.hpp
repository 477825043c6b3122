#pragma once

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "aode/number.hpp"

namespace aode {

/// Dense univariate polynomial over a field K, coefficient i multiplying x^i.
/// The zero polynomial has no coefficients and degree -1.
template <class K>
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }

  static UPoly constant(K c) { return UPoly(std::vector<K>{std::move(c)}); }
  static UPoly monomial(K c, std::size_t e) {
    std::vector<K> v(e + 1);
    v[e] = std::move(c);
    return UPoly(std::move(v));
  }
  static UPoly x() { return monomial(K(1), 1); }
  static UPoly one() { return constant(K(1)); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<K>& coeffs() const { return c_; }
  K coeff(std::size_t i) const { return i < c_.size() ? c_[i] : K(); }
  const K& leading() const { return c_.back(); }
  K trailing_nonzero() const {
    for (const auto& c : c_)
      if (!coeff_is_zero(c)) return c;
    return K();
  }
  /// Index of the lowest nonzero coefficient; -1 for zero.
  int valuation() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!coeff_is_zero(c_[i])) return static_cast<int>(i);
    return -1;
  }

  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const UPoly& a, const UPoly& b) { return !(a == b); }

  UPoly operator-() const {
    UPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }
  UPoly& operator+=(const UPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  UPoly& operator-=(const UPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<K> v(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (coeff_is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    }
    return UPoly(std::move(v));
  }
  UPoly& operator*=(const UPoly& o) { return *this = *this * o; }
  UPoly scaled(const K& s) const {
    if (coeff_is_zero(s)) return {};
    UPoly r = *this;
    for (auto& c : r.c_) c *= s;
    r.trim();
    return r;
  }

  UPoly pow(unsigned e) const {
    UPoly result = one(), base = *this;
    while (e) {
      if (e & 1u) result *= base;
      e >>= 1u;
      if (e) base *= base;
    }
    return result;
  }

  UPoly shifted(std::size_t k) const {
    if (is_zero()) return {};
    std::vector<K> v(k);
    v.insert(v.end(), c_.begin(), c_.end());
    return UPoly(std::move(v));
  }

  UPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<K> v(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * K(static_cast<long>(i));
    return UPoly(std::move(v));
  }

  K eval(const K& x) const {
    K acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  /// Substitute another polynomial for the variable.
  UPoly compose(const UPoly& inner) const {
    UPoly acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * inner + constant(*it);
    return acc;
  }

  UPoly monic() const {
    if (is_zero()) return {};
    return scaled(K(1) / leading());
  }

  /// Euclidean division; throws on division by zero.
  static std::pair<UPoly, UPoly> divrem(const UPoly& a, const UPoly& b) {
    if (b.is_zero()) throw DomainError("polynomial division by zero");
    if (a.degree() < b.degree()) return {UPoly(), a};
    std::vector<K> rem = a.c_;
    std::vector<K> quo(a.c_.size() - b.c_.size() + 1);
    const K inv = K(1) / b.leading();
    const std::size_t db = b.c_.size() - 1;
    for (std::size_t i = rem.size(); i-- > db;) {
      if (coeff_is_zero(rem[i])) continue;
      K q = rem[i] * inv;
      for (std::size_t j = 0; j <= db; ++j) rem[i - db + j] -= q * b.c_[j];
      quo[i - db] = std::move(q);
    }
    rem.resize(db);
    return {UPoly(std::move(quo)), UPoly(std::move(rem))};
  }
  friend UPoly operator/(const UPoly& a, const UPoly& b) { return divrem(a, b).first; }
  friend UPoly operator%(const UPoly& a, const UPoly& b) { return divrem(a, b).second; }

  bool divides(const UPoly& a) const { return (a % *this).is_zero(); }

  /// Quotient that must be exact.
  UPoly exact_div(const UPoly& b) const {
    auto [q, r] = divrem(*this, b);
    if (!r.is_zero()) throw DomainError("inexact polynomial division");
    return q;
  }

  /// Monic gcd; gcd(0, 0) = 0.
  static UPoly gcd(UPoly a, UPoly b) {
    while (!b.is_zero()) {
      UPoly r = a % b;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  /// Returns (g, s, t) with s*a + t*b = g, g monic.
  static std::tuple<UPoly, UPoly, UPoly> xgcd(const UPoly& a, const UPoly& b) {
    UPoly r0 = a, r1 = b, s0 = one(), s1, t0, t1 = one();
    while (!r1.is_zero()) {
      auto [q, r] = divrem(r0, r1);
      r0 = std::move(r1);
      r1 = std::move(r);
      UPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
      s0 = std::move(s1);
      s1 = std::move(s2);
      t0 = std::move(t1);
      t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    const K inv = K(1) / r0.leading();
    return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
  }

  /// Multiplicity of `factor` (nonconstant) in this nonzero polynomial.
  int multiplicity_of(const UPoly& factor) const {
    if (is_zero()) throw DomainError("multiplicity in the zero polynomial");
    if (factor.degree() < 1) throw DomainError("multiplicity of a constant");
    int m = 0;
    UPoly cur = *this;
    for (;;) {
      auto [q, r] = divrem(cur, factor);
      if (!r.is_zero()) return m;
      cur = std::move(q);
      ++m;
    }
  }

 private:
  void trim() {
    while (!c_.empty() && coeff_is_zero(c_.back())) c_.pop_back();
  }

  std::vector<K> c_;
};

/// Polynomials in one variable over Q. The variable is called t unless printed otherwise.
using UniPoly = UPoly<Rat>;

namespace detail {

inline bool needs_parens(const std::string& s) {
  // A coefficient like "t + 1" or "-1/2" must be wrapped when it multiplies a power.
  for (std::size_t i = 1; i < s.size(); ++i)
    if (s[i] == '+' || s[i] == '-') return true;
  return false;
}

}  // namespace detail

/// Prints in the equation grammar: "2*t^3 - 1/2*t + 1".
inline std::string to_string(const UniPoly& p, const std::string& var = "t") {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = p.degree(); i >= 0; --i) {
    const Rat& c = p.coeffs()[static_cast<std::size_t>(i)];
    if (is_zero(c)) continue;
    Rat mag = abs(c);
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str() << "*";
    os << var;
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

/// Clears denominators and content: returns (scale, primitive integer coefficients, highest first
/// positive) with p = scale * primitive.
inline std::pair<Rat, std::vector<Integer>> primitive_integer_form(const UniPoly& p) {
  if (p.is_zero()) throw DomainError("primitive form of the zero polynomial");
  Integer den = 1;
  for (const auto& c : p.coeffs()) den = ilcm(den, Integer(c.get_den()));
  std::vector<Integer> z;
  z.reserve(p.coeffs().size());
  Integer g = 0;
  for (const auto& c : p.coeffs()) {
    Integer v = Integer(c.get_num()) * (den / Integer(c.get_den()));
    g = igcd(g, v);
    z.push_back(std::move(v));
  }
  if (sgn(z.back()) < 0) g = -g;
  for (auto& v : z) v /= g;
  return {make_rat(g, den), std::move(z)};
}

inline UniPoly from_integers(const std::vector<Integer>& z) {
  std::vector<Rat> v;
  v.reserve(z.size());
  for (const auto& x : z) v.emplace_back(x);
  return UniPoly(std::move(v));
}

/// Square-free decomposition (Yun): returns monic pairwise-coprime (s_i, i) with p = lc * prod s_i^i.
inline std::vector<std::pair<UniPoly, int>> squarefree_decomposition(const UniPoly& p) {
  std::vector<std::pair<UniPoly, int>> out;
  if (p.degree() < 1) return out;
  UniPoly f = p.monic();
  UniPoly df = f.derivative();
  UniPoly a = UniPoly::gcd(f, df);
  UniPoly b = f.exact_div(a);
  UniPoly c = df.exact_div(a) - b.derivative();
  int i = 1;
  while (b.degree() >= 1) {
    UniPoly d = UniPoly::gcd(b, c);
    if (d.degree() >= 1) out.emplace_back(d, i);
    UniPoly b2 = b.exact_div(d);
    c = c.exact_div(d) - b2.derivative();
    b = std::move(b2);
    ++i;
  }
  return out;
}

}  // namespace aode
