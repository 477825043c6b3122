#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace aode {

using Integer = mpz_class;
using Rat = mpq_class;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument does not hold (zero polynomial, vanishing determinant, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The equation has no y' and is therefore not a first order differential equation.
class OrderError : public Error {
 public:
  using Error::Error;
};

/// A structural hypothesis of a bound or transformation is violated. `hypothesis()` names it.
class HypothesisError : public Error {
 public:
  HypothesisError(std::string hypothesis, const std::string& what)
      : Error(what), hypothesis_(std::move(hypothesis)) {}
  const std::string& hypothesis() const { return hypothesis_; }

 private:
  std::string hypothesis_;
};

/// None of the degree bounds applies to the equation.
class NoApplicableBound : public Error {
 public:
  using Error::Error;
};

inline bool is_zero(const Rat& x) { return sgn(x) == 0; }
inline bool is_zero(const Integer& x) { return sgn(x) == 0; }
// Coefficient predicate used by the polynomial templates (found by ADL for user types).
inline bool coeff_is_zero(const Rat& x) { return sgn(x) == 0; }
inline bool coeff_is_zero(const Integer& x) { return sgn(x) == 0; }
inline bool is_one(const Rat& x) { return x == 1; }
inline bool is_negative(const Rat& x) { return sgn(x) < 0; }

inline Rat make_rat(long num, long den = 1) {
  if (den == 0) throw DomainError("zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Rat make_rat(const Integer& num, const Integer& den) {
  if (sgn(den) == 0) throw DomainError("zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Integer& x) { return x.get_str(); }
inline std::string to_string(const Rat& x) { return x.get_str(); }

inline Integer ipow(Integer base, unsigned long e) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

inline Rat rpow(const Rat& base, unsigned long e) {
  Integer n, d;
  mpz_pow_ui(n.get_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(d.get_mpz_t(), base.get_den_mpz_t(), e);
  return Rat(n, d);  // already canonical
}

inline Integer igcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Integer ilcm(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

inline bool fits_int64(const Integer& x) {
  return mpz_sizeinbase(x.get_mpz_t(), 2) <= 62;
}

inline std::int64_t to_int64(const Integer& x) {
  if (!fits_int64(x)) throw DomainError("integer does not fit in 64 bits: " + x.get_str());
  return static_cast<std::int64_t>(mpz_get_si(x.get_mpz_t()));
}

}  // namespace aode
