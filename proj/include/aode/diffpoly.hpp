#pragma once

#include <array>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "aode/factor.hpp"
#include "aode/mpoly.hpp"
#include "aode/ratfunc.hpp"

namespace aode {

/// Variable slots of a first order differential polynomial. After a change of variables the same
/// slots hold (t, z, z').
enum class Var : std::size_t { T = 0, Y = 1, YP = 2 };

inline constexpr std::size_t kT = 0, kY = 1, kYP = 2;

/// Polynomial in y (or z) with coefficients in Q(t).
using YPoly = UPoly<RatFunc>;

/// f(t, y, y') with rational coefficients, stored sparsely as a map (t-exp, y-exp, y'-exp) -> coeff.
class DiffPoly {
 public:
  using Exponents = std::array<int, 3>;

  DiffPoly() = default;
  explicit DiffPoly(QPoly p) : p_(std::move(p)) {
    for (const auto& tm : p_.terms())
      for (std::size_t i = 3; i < kMaxVars; ++i)
        if (tm.m.e[i]) throw DomainError("differential polynomial uses a variable other than t, y, y'");
  }
  static DiffPoly from_terms(const std::map<Exponents, Rat>& terms) {
    std::vector<QPoly::Term> out;
    for (const auto& [e, c] : terms) {
      Monomial m;
      for (std::size_t i = 0; i < 3; ++i) {
        if (e[i] < 0) throw DomainError("negative exponent in differential polynomial");
        m.e[i] = static_cast<std::uint16_t>(e[i]);
      }
      out.push_back({m, c});
    }
    return DiffPoly(QPoly::from_terms(std::move(out)));
  }
  static DiffPoly t() { return DiffPoly(QPoly::var(kT)); }
  static DiffPoly y() { return DiffPoly(QPoly::var(kY)); }
  static DiffPoly yp() { return DiffPoly(QPoly::var(kYP)); }
  static DiffPoly constant(const Rat& c) { return DiffPoly(QPoly::constant(c)); }

  const QPoly& poly() const { return p_; }
  bool is_zero() const { return p_.is_zero(); }
  std::size_t term_count() const { return p_.size(); }

  std::map<Exponents, Rat> term_map() const {
    std::map<Exponents, Rat> out;
    for (const auto& tm : p_.terms()) out[{tm.m.e[kT], tm.m.e[kY], tm.m.e[kYP]}] = tm.c;
    return out;
  }

  friend bool operator==(const DiffPoly& a, const DiffPoly& b) { return a.p_ == b.p_; }
  friend bool operator!=(const DiffPoly& a, const DiffPoly& b) { return !(a == b); }
  friend DiffPoly operator+(const DiffPoly& a, const DiffPoly& b) { return DiffPoly(a.p_ + b.p_, Trusted{}); }
  friend DiffPoly operator-(const DiffPoly& a, const DiffPoly& b) { return DiffPoly(a.p_ - b.p_, Trusted{}); }
  friend DiffPoly operator*(const DiffPoly& a, const DiffPoly& b) { return DiffPoly(a.p_ * b.p_, Trusted{}); }
  DiffPoly operator-() const { return DiffPoly(-p_, Trusted{}); }
  DiffPoly scaled(const Rat& c) const { return DiffPoly(p_.scaled(c), Trusted{}); }
  DiffPoly pow(unsigned e) const { return DiffPoly(p_.pow(e), Trusted{}); }

 private:
  struct Trusted {};
  DiffPoly(QPoly p, Trusted) : p_(std::move(p)) {}

  QPoly p_;
};

inline std::string to_string(const DiffPoly& f, const std::array<std::string, 3>& names = {"t", "y", "y'"}) {
  return to_string(f.poly(), std::vector<std::string>(names.begin(), names.end()));
}

inline void require_nonzero(const DiffPoly& f, const char* op) {
  if (f.is_zero()) throw DomainError(std::string(op) + ": the zero differential polynomial");
}

namespace detail {

inline void require_order(const DiffPoly& f, const char* op) {
  require_nonzero(f, op);
  if (!f.poly().uses_var(kYP)) throw OrderError(std::string(op) + ": the polynomial does not involve y'");
}

}  // namespace detail

/// Exact partial degree in t, y or y'.
inline int deg_in(const DiffPoly& f, Var v) {
  require_nonzero(f, "deg_in");
  return f.poly().degree_in(static_cast<std::size_t>(v));
}

/// Total degree in (y, y') with coefficients viewed in Q(t).
inline int tdeg_yy(const DiffPoly& f) {
  require_nonzero(f, "tdeg_yy");
  int d = 0;
  for (const auto& tm : f.poly().terms()) d = std::max(d, tm.m.e[kY] + tm.m.e[kYP]);
  return d;
}

/// Pairs (y-exponent, y'-exponent) carrying a nonzero coefficient in Q(t).
inline std::set<std::pair<int, int>> support(const DiffPoly& f) {
  std::set<std::pair<int, int>> s;
  for (const auto& tm : f.poly().terms()) s.emplace(tm.m.e[kY], tm.m.e[kYP]);
  return s;
}

/// Coefficient of y^j y'^k as a polynomial in t.
inline std::map<std::pair<int, int>, UniPoly> t_coefficients(const DiffPoly& f) {
  std::map<std::pair<int, int>, std::vector<Rat>> acc;
  for (const auto& tm : f.poly().terms()) {
    auto& v = acc[{tm.m.e[kY], tm.m.e[kYP]}];
    const std::size_t i = tm.m.e[kT];
    if (v.size() <= i) v.resize(i + 1);
    v[i] += tm.c;
  }
  std::map<std::pair<int, int>, UniPoly> out;
  for (auto& [jk, v] : acc) out.emplace(jk, UniPoly(std::move(v)));
  return out;
}

inline DiffPoly from_t_coefficients(const std::map<std::pair<int, int>, UniPoly>& coeffs) {
  std::vector<QPoly::Term> out;
  for (const auto& [jk, u] : coeffs)
    for (std::size_t i = 0; i < u.coeffs().size(); ++i) {
      if (is_zero(u.coeffs()[i])) continue;
      Monomial m;
      m.e[kT] = static_cast<std::uint16_t>(i);
      m.e[kY] = static_cast<std::uint16_t>(jk.first);
      m.e[kYP] = static_cast<std::uint16_t>(jk.second);
      out.push_back({m, u.coeffs()[i]});
    }
  return DiffPoly(QPoly::from_terms(std::move(out)));
}

/// a_0, ..., a_n with f = sum a_i(t, y) y'^i; each a_i is a polynomial in y over Q(t).
inline std::vector<YPoly> y_prime_coefficients(const DiffPoly& f) {
  if (f.is_zero()) return {};
  const int n = f.poly().degree_in(kYP);
  std::vector<std::vector<RatFunc>> rows(static_cast<std::size_t>(n) + 1);
  for (const auto& [jk, u] : t_coefficients(f)) {
    auto& row = rows[static_cast<std::size_t>(jk.second)];
    if (row.size() <= static_cast<std::size_t>(jk.first)) row.resize(static_cast<std::size_t>(jk.first) + 1);
    row[static_cast<std::size_t>(jk.first)] = RatFunc(u);
  }
  std::vector<YPoly> out;
  out.reserve(rows.size());
  for (auto& r : rows) out.emplace_back(std::move(r));
  return out;
}

/// Evaluates a polynomial in y with polynomial coefficients at a rational y.
inline RatFunc eval_y(const YPoly& a, const Rat& y) { return a.eval(RatFunc(y)); }

namespace detail {

/// Leading term under the order y' first, then y, then t.
inline const QPoly::Term& sign_term(const QPoly& p) {
  const QPoly::Term* best = &p.terms().front();
  auto key = [](const QPoly::Term& tm) { return std::array<int, 3>{tm.m.e[kYP], tm.m.e[kY], tm.m.e[kT]}; };
  for (const auto& tm : p.terms())
    if (key(tm) > key(*best)) best = &tm;
  return *best;
}

inline DiffPoly normalize_coefficients(std::map<std::pair<int, int>, UniPoly> coeffs) {
  UniPoly g;
  for (const auto& [jk, u] : coeffs) g = UniPoly::gcd(g, u);
  for (auto& [jk, u] : coeffs) u = u.exact_div(g);
  ZPoly z = primitive_part(from_t_coefficients(coeffs).poly());
  DiffPoly f(to_rational(z));
  if (sgn(sign_term(f.poly()).c) < 0) f = -f;
  return f;
}

}  // namespace detail

/// Primitive form: coefficients in Z[t], no common factor in Q[t], integer content 1, and the
/// term with the highest (y', y, t) exponents has a positive coefficient.
inline DiffPoly normalize(const DiffPoly& f) {
  require_nonzero(f, "normalize");
  return detail::normalize_coefficients(t_coefficients(f));
}

/// Same, for input whose coefficients of y^j y'^k are given in Q(t).
inline DiffPoly normalize(const std::map<std::pair<int, int>, RatFunc>& coeffs) {
  UniPoly den = UniPoly::one();
  bool any = false;
  for (const auto& [jk, r] : coeffs)
    if (!r.is_zero()) {
      den = lcm(den, r.den());
      any = true;
    }
  if (!any) throw DomainError("normalize: the zero differential polynomial");
  std::map<std::pair<int, int>, UniPoly> cleared;
  for (const auto& [jk, r] : coeffs)
    if (!r.is_zero()) cleared.emplace(jk, r.num() * den.exact_div(r.den()));
  return detail::normalize_coefficients(std::move(cleared));
}

/// Image of y or y' under a change of variables: num / z^z_power, where num is a polynomial in
/// the slots (t, z, z').
struct SubstitutionImage {
  QPoly num;
  unsigned z_power = 0;
};

/// Computes z^clearing_power * f(t, y_image, yp_image). Throws when a power of z survives in the
/// denominator.
inline DiffPoly substitute(const DiffPoly& f, const SubstitutionImage& y_image, const SubstitutionImage& yp_image,
                           unsigned clearing_power) {
  unsigned top = 0;
  for (const auto& tm : f.poly().terms())
    top = std::max(top, tm.m.e[kY] * y_image.z_power + tm.m.e[kYP] * yp_image.z_power);
  std::vector<QPoly> ypow{QPoly::constant(Rat(1))}, yppow{QPoly::constant(Rat(1))};
  auto power_of = [](std::vector<QPoly>& cache, const QPoly& base, unsigned e) -> const QPoly& {
    while (cache.size() <= e) cache.push_back(cache.back() * base);
    return cache[e];
  };
  QPoly acc;
  for (const auto& tm : f.poly().terms()) {
    const unsigned j = tm.m.e[kY], k = tm.m.e[kYP];
    Monomial shift;
    shift.e[kT] = tm.m.e[kT];
    shift.e[kY] = static_cast<std::uint16_t>(top - j * y_image.z_power - k * yp_image.z_power);
    acc += (power_of(ypow, y_image.num, j) * power_of(yppow, yp_image.num, k)).mul_term(shift, tm.c);
  }
  if (clearing_power >= top) return DiffPoly(acc.mul_term(Monomial::var(kY, clearing_power - top), Rat(1)));
  const unsigned deficit = top - clearing_power;
  std::vector<QPoly::Term> out;
  for (const auto& tm : acc.terms()) {
    if (tm.m.e[kY] < deficit)
      throw DomainError("substitute: clearing power " + std::to_string(clearing_power) +
                        " leaves a denominator in z");
    auto m = tm.m;
    m.e[kY] = static_cast<std::uint16_t>(m.e[kY] - deficit);
    out.push_back({m, tm.c});
  }
  return DiffPoly(QPoly::from_terms(std::move(out)));
}

enum class IrreducibilityStatus { Irreducible, Reducible, Unknown };

inline std::string to_string(IrreducibilityStatus s) {
  switch (s) {
    case IrreducibilityStatus::Irreducible: return "irreducible";
    case IrreducibilityStatus::Reducible: return "reducible";
    default: return "unknown";
  }
}

struct IrreducibilityVerdict {
  IrreducibilityStatus status = IrreducibilityStatus::Unknown;
  std::optional<DiffPoly> witness;
  std::string method;
};

namespace detail {

/// Polynomial in one of y, y' with coefficients in Q[t], lowest power first.
using TCoeffPoly = std::vector<UniPoly>;

inline void trim(TCoeffPoly& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

/// Divides out the gcd over Q[t] of the coefficients.
inline TCoeffPoly primitive_in_t(TCoeffPoly a) {
  trim(a);
  UniPoly g;
  for (const auto& c : a) g = UniPoly::gcd(g, c);
  if (g.degree() >= 1 || (!g.is_zero() && g.leading() != 1))
    for (auto& c : a) c = c.exact_div(g);
  return a;
}

/// gcd over Q(t) by the primitive pseudo-remainder sequence, which keeps every coefficient in
/// Q[t] and free of common factors; Euclid over Q(t) itself swells badly.
inline TCoeffPoly gcd_over_qt(TCoeffPoly a, TCoeffPoly b) {
  a = primitive_in_t(std::move(a));
  b = primitive_in_t(std::move(b));
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    while (a.size() >= b.size()) {
      const std::size_t shift = a.size() - b.size();
      const UniPoly la = a.back(), lb = b.back();
      for (auto& c : a) c = c * lb;
      for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= la * b[i];
      trim(a);
      if (a.empty()) break;
    }
    a = primitive_in_t(std::move(a));
    std::swap(a, b);
  }
  return a;
}

/// Cheap certificate that the content with respect to `outer` is a unit: at t = t0 the gcd over Q
/// of the specialized coefficients has degree 0 while t0 is not a root of the leading coefficient
/// (in `inner`) of some coefficient. That leading coefficient is a multiple of the content's, so
/// the content cannot drop degree at t0.
inline bool content_is_unit_at(const DiffPoly& f, std::size_t outer, std::size_t inner, const Rat& t0) {
  std::map<int, std::map<int, UniPoly>> rows;  // outer exponent -> inner exponent -> poly in t
  for (const auto& tm : f.poly().terms())
    rows[tm.m.e[outer]][tm.m.e[inner]] += UniPoly::monomial(tm.c, tm.m.e[kT]);
  bool lead_survives = false;
  UniPoly g;
  for (const auto& [k, row] : rows) {
    std::vector<Rat> c(static_cast<std::size_t>(row.rbegin()->first) + 1);
    for (const auto& [j, u] : row) c[static_cast<std::size_t>(j)] = u.eval(t0);
    lead_survives = lead_survives || sgn(c.back()) != 0;
    g = UniPoly::gcd(g, UniPoly(std::move(c)));
  }
  return lead_survives && g.degree() == 0;
}

/// gcd over Q(t) of the coefficients of f with respect to `outer`, as a polynomial in `inner`.
inline YPoly content_in(const DiffPoly& f, std::size_t outer, std::size_t inner) {
  if (content_is_unit_at(f, outer, inner, make_rat(7, 3)) || content_is_unit_at(f, outer, inner, make_rat(-5, 11)))
    return YPoly(std::vector<RatFunc>{RatFunc(1)});
  std::map<int, TCoeffPoly> rows;  // outer exponent -> coefficients in inner
  for (const auto& tm : f.poly().terms()) {
    auto& row = rows[tm.m.e[outer]];
    if (row.size() <= tm.m.e[inner]) row.resize(tm.m.e[inner] + 1u);
    row[tm.m.e[inner]] += UniPoly::monomial(tm.c, tm.m.e[kT]);
  }
  TCoeffPoly g;
  for (auto& [k, row] : rows) g = gcd_over_qt(std::move(g), std::move(row));
  std::vector<RatFunc> out;
  for (auto& c : g) out.emplace_back(std::move(c));
  return YPoly(std::move(out));
}

/// Turns a polynomial in `var` over Q(t) into a primitive polynomial in Q[t][var].
inline DiffPoly clear_to_diffpoly(const YPoly& g, std::size_t var) {
  std::map<std::pair<int, int>, RatFunc> coeffs;
  for (std::size_t i = 0; i < g.coeffs().size(); ++i) {
    if (g.coeffs()[i].is_zero()) continue;
    std::pair<int, int> jk = var == kY ? std::pair<int, int>{static_cast<int>(i), 0}
                                       : std::pair<int, int>{0, static_cast<int>(i)};
    coeffs.emplace(jk, g.coeffs()[i]);
  }
  return normalize(coeffs);
}

}  // namespace detail

/// Decides irreducibility of f over Q(t) when a cheap certificate exists.
///
/// Reducible comes with an exact factor (a factor free of y' or free of y). Irreducible is claimed
/// only when, after specializing t to a random rational and restricting (y, y') to a random affine
/// line, the resulting univariate polynomial keeps the full total degree and is irreducible over Q:
/// any nontrivial factorization of the primitive f would survive that restriction.
inline IrreducibilityVerdict irreducibility_check(const DiffPoly& f_in, std::uint64_t seed = 0) {
  require_nonzero(f_in, "irreducibility_check");
  const DiffPoly f = normalize(f_in);

  for (auto [outer, inner, tag] : {std::tuple{kYP, kY, "factor free of y'"}, std::tuple{kY, kYP, "factor free of y"}}) {
    if (f.poly().degree_in(outer) == 0) continue;  // the content would be f itself
    YPoly g = detail::content_in(f, outer, inner);
    if (g.degree() >= 1) {
      DiffPoly w = detail::clear_to_diffpoly(g, inner);
      // Gauss' lemma: the primitive content divides the primitive f exactly.
      (void)f.poly().exact_div(w.poly());
      return {IrreducibilityStatus::Reducible, w, tag};
    }
  }

  const int rho = tdeg_yy(f);
  if (rho == 0) return {IrreducibilityStatus::Unknown, std::nullopt, "constant in y, y'"};

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> small(-9, 9), den(1, 7), num(-40, 40);
  for (int attempt = 0; attempt < 5; ++attempt) {
    const Rat t0 = make_rat(num(rng), den(rng));
    int a1 = 0, a2 = 0;
    while (a1 == 0) a1 = small(rng);
    while (a2 == 0) a2 = small(rng);
    const Rat b1 = small(rng), b2 = small(rng);
    const UniPoly ly({b1, Rat(a1)}), lyp({b2, Rat(a2)});
    std::vector<UniPoly> ypow{UniPoly::one()}, yppow{UniPoly::one()};
    UniPoly restricted;
    for (const auto& tm : f.poly().terms()) {
      while (ypow.size() <= tm.m.e[kY]) ypow.push_back(ypow.back() * ly);
      while (yppow.size() <= tm.m.e[kYP]) yppow.push_back(yppow.back() * lyp);
      Rat c = tm.c * rpow(t0, tm.m.e[kT]);
      restricted += (ypow[tm.m.e[kY]] * yppow[tm.m.e[kYP]]).scaled(c);
    }
    if (restricted.degree() != rho) continue;
    if (is_irreducible_over_q(restricted)) return {IrreducibilityStatus::Irreducible, std::nullopt, "line restriction"};
  }
  return {IrreducibilityStatus::Unknown, std::nullopt, "line restriction inconclusive"};
}

}  // namespace aode
