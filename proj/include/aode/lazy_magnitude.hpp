#pragma once

#include <compare>
#include <optional>
#include <string>
#include <utility>
#include <variant>

#include "aode/number.hpp"

namespace aode {

inline constexpr long kDefaultDigitThreshold = 1'000'000;

/// Closed interval [lo, hi] of non-negative integers.
struct DigitBracket {
  Integer lo;
  Integer hi;
};

namespace detail {

/// Bracket for log2(x), x >= 1, in fixed point: lo <= 2^precision * log2(x) <= hi.
///
/// The integer part is the bit length; the fractional bits come from repeated squaring of the
/// mantissa, once with downward and once with upward rounding, so each run bounds the true value
/// from its own side.
inline std::pair<Integer, Integer> log2_fixed(const Integer& x, unsigned long precision) {
  if (sgn(x) <= 0) throw DomainError("log2 of a non-positive integer");
  const unsigned long int_part = mpz_sizeinbase(x.get_mpz_t(), 2) - 1;
  const unsigned long frac_bits = precision + 64;
  const Integer one = Integer(1) << frac_bits;
  const Integer two = one << 1;

  Integer m_lo, m_hi;
  // mantissa = x / 2^int_part in [1, 2), with frac_bits fractional bits
  if (frac_bits >= int_part) {
    m_lo = x << (frac_bits - int_part);
    m_hi = m_lo;
  } else {
    const unsigned long shift = int_part - frac_bits;
    mpz_fdiv_q_2exp(m_lo.get_mpz_t(), x.get_mpz_t(), shift);
    mpz_cdiv_q_2exp(m_hi.get_mpz_t(), x.get_mpz_t(), shift);
  }

  auto run = [&](Integer m, bool round_up) {
    Integer bits = 0;
    for (unsigned long i = 0; i < precision; ++i) {
      Integer sq = m * m;
      if (round_up)
        mpz_cdiv_q_2exp(m.get_mpz_t(), sq.get_mpz_t(), frac_bits);
      else
        mpz_fdiv_q_2exp(m.get_mpz_t(), sq.get_mpz_t(), frac_bits);
      bits <<= 1;
      if (m >= two) {
        bits += 1;
        if (round_up)
          mpz_cdiv_q_2exp(m.get_mpz_t(), m.get_mpz_t(), 1);
        else
          mpz_fdiv_q_2exp(m.get_mpz_t(), m.get_mpz_t(), 1);
      }
    }
    return bits;
  };
  const Integer base = Integer(int_part) << precision;
  return {base + run(m_lo, false), base + run(m_hi, true) + 1};
}

inline std::strong_ordering cmp_integers(const Integer& a, const Integer& b) {
  const int c = cmp(a, b);
  return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace detail

/// A non-negative integer that is either stored exactly or kept symbolically as
/// coeff * base^exponent + addend when its decimal expansion would be too long to materialize.
class LazyMagnitude {
 public:
  struct Tower {
    Integer coeff;
    Integer base;
    Integer exponent;
    Integer addend;
  };

  LazyMagnitude() : rep_(Integer(0)) {}
  static LazyMagnitude exact(Integer n) {
    if (sgn(n) < 0) throw DomainError("magnitudes are non-negative");
    return LazyMagnitude(std::move(n));
  }
  /// Symbolic value, never materialized at construction.
  static LazyMagnitude tower(Integer coeff, Integer base, Integer exponent, Integer addend = 0) {
    if (sgn(coeff) < 0 || sgn(base) < 0 || sgn(exponent) < 0 || sgn(addend) < 0)
      throw DomainError("tower parameters must be non-negative");
    if (sgn(coeff) == 0) return exact(std::move(addend));
    if (base < 2 || sgn(exponent) == 0) return exact(coeff * (base == 0 && sgn(exponent) > 0 ? 0 : 1) + addend);
    return LazyMagnitude(Tower{std::move(coeff), std::move(base), std::move(exponent), std::move(addend)});
  }
  /// Same value, stored exactly when it has at most digit_threshold decimal digits.
  static LazyMagnitude make(Integer coeff, Integer base, Integer exponent, Integer addend = 0,
                            long digit_threshold = kDefaultDigitThreshold) {
    LazyMagnitude v = tower(std::move(coeff), std::move(base), std::move(exponent), std::move(addend));
    if (auto n = v.materialize(digit_threshold)) return exact(std::move(*n));
    return v;
  }

  bool is_exact() const { return std::holds_alternative<Integer>(rep_); }
  const Integer& exact_value() const { return std::get<Integer>(rep_); }
  const Tower& tower_value() const { return std::get<Tower>(rep_); }

  /// Bracket for log2(value) in units of 2^-precision; std::nullopt when the value is zero.
  std::optional<std::pair<Integer, Integer>> log2_bracket(unsigned long precision) const {
    if (is_exact()) {
      if (sgn(exact_value()) == 0) return std::nullopt;
      return detail::log2_fixed(exact_value(), precision);
    }
    const Tower& tw = tower_value();
    auto [clo, chi] = detail::log2_fixed(tw.coeff, precision);
    auto [blo, bhi] = detail::log2_fixed(tw.base, precision);
    Integer lo = clo + tw.exponent * blo;
    Integer hi = chi + tw.exponent * bhi;
    if (sgn(tw.addend) > 0) {
      const Integer addend_bits = Integer(mpz_sizeinbase(tw.addend.get_mpz_t(), 2));
      if ((lo >> precision) >= addend_bits + Integer(precision) + 2) {
        // addend / main <= 2^-(precision+2), so log2(1 + addend/main) < 2^-precision
        hi += 1;
      } else {
        auto [alo, ahi] = detail::log2_fixed(tw.addend, precision);
        hi = (hi > ahi ? hi : ahi) + (Integer(1) << precision);
        if (alo > lo) lo = alo;
      }
    }
    return std::pair{lo, hi};
  }

  /// Bracket for the number of decimal digits (1 for the value 0).
  DigitBracket digit_bracket(unsigned long precision = 128) const {
    if (is_exact()) {
      const Integer d = Integer(exact_value().get_str().size());
      return {d, d};
    }
    auto [lo, hi] = *log2_bracket(precision);
    auto [tlo, thi] = detail::log2_fixed(Integer(10), precision);
    // log10 = log2 / log2(10); the fixed point scales cancel.
    Integer dlo = detail::floor_div(lo, thi) + 1;
    Integer dhi = detail::floor_div(hi, tlo) + 1;
    return {dlo, dhi};
  }

  /// Exact value when it has at most digit_threshold digits.
  std::optional<Integer> materialize(long digit_threshold = kDefaultDigitThreshold) const {
    if (is_exact()) return exact_value();
    if (digit_bracket().hi > digit_threshold) return std::nullopt;
    const Tower& tw = tower_value();
    return tw.coeff * ipow(tw.base, tw.exponent.get_ui()) + tw.addend;
  }

  std::string to_string(long digit_threshold = kDefaultDigitThreshold) const {
    if (is_exact()) return exact_value().get_str();
    if (auto n = materialize(digit_threshold)) return n->get_str();
    const Tower& tw = tower_value();
    std::string s = tw.base.get_str() + "^" + tw.exponent.get_str();
    if (tw.coeff != 1) s = tw.coeff.get_str() + "*" + s;
    if (sgn(tw.addend) > 0) s += " + " + tw.addend.get_str();
    return s;
  }

 private:
  explicit LazyMagnitude(Integer n) : rep_(std::move(n)) {}
  explicit LazyMagnitude(Tower t) : rep_(std::move(t)) {}

  std::variant<Integer, Tower> rep_;
};

/// Three-way comparison. Log brackets decide first; overlapping brackets fall back to exact
/// values when both fit under the digit threshold, otherwise the result is std::nullopt.
inline std::optional<std::strong_ordering> compare(const LazyMagnitude& a, const LazyMagnitude& b,
                                                   long digit_threshold = kDefaultDigitThreshold) {
  if (a.is_exact() && b.is_exact()) return detail::cmp_integers(a.exact_value(), b.exact_value());
  for (unsigned long precision : {64ul, 256ul, 1024ul}) {
    auto la = a.log2_bracket(precision);
    auto lb = b.log2_bracket(precision);
    if (!la && !lb) return std::strong_ordering::equal;
    if (!la) return std::strong_ordering::less;
    if (!lb) return std::strong_ordering::greater;
    if (la->second < lb->first) return std::strong_ordering::less;
    if (lb->second < la->first) return std::strong_ordering::greater;
  }
  auto ea = a.materialize(digit_threshold);
  auto eb = b.materialize(digit_threshold);
  if (ea && eb) return detail::cmp_integers(*ea, *eb);
  return std::nullopt;
}

}  // namespace aode
