#pragma once

#include <string>
#include <utility>

#include "aode/upoly.hpp"

namespace aode {

/// Element of Q(t) in lowest terms with a monic denominator.
class RatFunc {
 public:
  RatFunc() : num_(), den_(UniPoly::one()) {}
  RatFunc(long c) : RatFunc(Rat(c)) {}  // NOLINT: integers embed implicitly
  RatFunc(const Rat& c) : num_(UniPoly::constant(c)), den_(UniPoly::one()) {}  // NOLINT
  RatFunc(UniPoly p) : num_(std::move(p)), den_(UniPoly::one()) {}  // NOLINT
  RatFunc(UniPoly num, UniPoly den) : num_(std::move(num)), den_(std::move(den)) { reduce(); }

  static RatFunc t() { return RatFunc(UniPoly::x()); }

  const UniPoly& num() const { return num_; }
  const UniPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
  bool is_polynomial() const { return den_.degree() == 0; }

  /// max(deg num, deg den); 0 for constants (including 0).
  int degree() const { return std::max(std::max(num_.degree(), 0), den_.degree()); }

  RatFunc derivative() const {
    // (p'q - pq') / q^2, reduced by the constructor.
    return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
  }

  Rat eval(const Rat& x) const {
    Rat d = den_.eval(x);
    if (is_zero_rat(d)) throw DomainError("rational function evaluated at a pole");
    return num_.eval(x) / d;
  }

  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  RatFunc operator-() const { return RatFunc(-num_, den_, Reduced{}); }
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return {};
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw DomainError("division by the zero rational function");
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
  }
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

  RatFunc pow(int e) const {
    if (e < 0) return RatFunc(1) / pow(-e);
    return RatFunc(num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)), Reduced{});
  }

 private:
  struct Reduced {};
  RatFunc(UniPoly num, UniPoly den, Reduced) : num_(std::move(num)), den_(std::move(den)) {}

  static bool is_zero_rat(const Rat& x) { return sgn(x) == 0; }

  void reduce() {
    if (den_.is_zero()) throw DomainError("rational function with zero denominator");
    if (num_.is_zero()) {
      den_ = UniPoly::one();
      return;
    }
    UniPoly g = UniPoly::gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = num_.exact_div(g);
      den_ = den_.exact_div(g);
    }
    Rat lc = den_.leading();
    if (lc != 1) {
      Rat inv = 1 / lc;
      num_ = num_.scaled(inv);
      den_ = den_.scaled(inv);
    }
  }

  UniPoly num_;
  UniPoly den_;
};

inline bool is_zero(const RatFunc& r) { return r.is_zero(); }
inline bool coeff_is_zero(const RatFunc& r) { return r.is_zero(); }
inline bool is_one(const RatFunc& r) { return r.is_constant() && r.num() == UniPoly::one(); }

/// deg(r) = max(deg numerator, deg denominator).
inline int ratfunc_degree(const RatFunc& r) { return r.degree(); }

inline RatFunc ratfunc_derivative(const RatFunc& r) { return r.derivative(); }

/// (c1 r + c2) / (c3 r + c4) with c1 c4 - c2 c3 != 0.
inline RatFunc ratfunc_mobius(const RatFunc& r, const Rat& c1, const Rat& c2, const Rat& c3, const Rat& c4) {
  if (sgn(Rat(c1 * c4 - c2 * c3)) == 0) throw DomainError("Mobius map with vanishing determinant");
  const UniPoly& p = r.num();
  const UniPoly& q = r.den();
  UniPoly top = p.scaled(c1) + q.scaled(c2);
  UniPoly bottom = p.scaled(c3) + q.scaled(c4);
  if (bottom.is_zero()) throw DomainError("Mobius image has an identically zero denominator");
  return RatFunc(std::move(top), std::move(bottom));
}

inline std::string to_string(const RatFunc& r, const std::string& var = "t") {
  if (r.is_polynomial()) return to_string(r.num(), var);
  auto wrap = [&](const UniPoly& p) {
    std::string s = to_string(p, var);
    bool single = p.valuation() == p.degree();
    return single && s.find('/') == std::string::npos ? s : "(" + s + ")";
  };
  return wrap(r.num()) + "/" + wrap(r.den());
}

/// Least common multiple of monic polynomials, monic.
inline UniPoly lcm(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  return (a * b).exact_div(UniPoly::gcd(a, b)).monic();
}

}  // namespace aode
