#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "aode/diffpoly.hpp"
#include "aode/factor.hpp"
#include "aode/ratfunc.hpp"

namespace aode {

/// A place of Q(t): either the place at infinity (uniformizer 1/t) or the Galois orbit of the
/// zeros of a monic irreducible polynomial (uniformizer t - c at each conjugate c).
class Place {
 public:
  enum class Kind { Finite, Infinite };

  static Place infinite() { return Place(Kind::Infinite, {}); }
  /// Throws unless minimal_poly is monic and irreducible over Q.
  static Place finite(UniPoly minimal_poly) {
    if (minimal_poly.degree() < 1 || minimal_poly.leading() != 1 || !is_irreducible_over_q(minimal_poly))
      throw DomainError("a finite place needs a monic irreducible polynomial, got " + to_string(minimal_poly));
    return Place(Kind::Finite, std::move(minimal_poly));
  }

  Kind kind() const { return kind_; }
  const UniPoly& minimal_poly() const { return poly_; }
  /// Number of conjugate points in the orbit: deg(minimal_poly), or 1 at infinity.
  int weight() const { return kind_ == Kind::Infinite ? 1 : poly_.degree(); }

 private:
  Place(Kind k, UniPoly p) : kind_(k), poly_(std::move(p)) {}
  Kind kind_;
  UniPoly poly_;
};

/// Order of a at the place; std::nullopt stands for +infinity (a = 0).
inline std::optional<int> ord_at(const RatFunc& a, const Place& p) {
  if (a.is_zero()) return std::nullopt;
  if (p.kind() == Place::Kind::Infinite) return a.den().degree() - a.num().degree();
  const int up = a.num().degree() >= 1 ? a.num().multiplicity_of(p.minimal_poly()) : 0;
  const int down = a.den().degree() >= 1 ? a.den().multiplicity_of(p.minimal_poly()) : 0;
  return up - down;
}

/// Height as an exact non-negative rational.
struct HeightValue {
  Rat value;

  friend bool operator==(const HeightValue& a, const HeightValue& b) { return a.value == b.value; }
  friend bool operator<(const HeightValue& a, const HeightValue& b) { return a.value < b.value; }
  friend bool operator<=(const HeightValue& a, const HeightValue& b) { return a.value <= b.value; }
};

namespace detail {

inline void require_nonzero_tuple(std::span<const RatFunc> coords, const char* op) {
  if (std::all_of(coords.begin(), coords.end(), [](const RatFunc& a) { return a.is_zero(); }))
    throw DomainError(std::string(op) + ": all coordinates are zero");
}

}  // namespace detail

/// Height of the projective point (a_0 : ... : a_m): the maximal degree once the coordinates are
/// scaled to coprime polynomials.
inline HeightValue height_point(std::span<const RatFunc> coords) {
  detail::require_nonzero_tuple(coords, "height_point");
  UniPoly den = UniPoly::one();
  for (const auto& a : coords)
    if (!a.is_zero()) den = lcm(den, a.den());
  std::vector<UniPoly> polys;
  UniPoly g;
  for (const auto& a : coords) {
    if (a.is_zero()) continue;
    polys.push_back(a.num() * den.exact_div(a.den()));
    g = UniPoly::gcd(g, polys.back());
  }
  int h = 0;
  for (const auto& p : polys) h = std::max(h, p.exact_div(g).degree());
  return {Rat(h)};
}

inline HeightValue height_point(std::initializer_list<RatFunc> coords) {
  return height_point(std::span<const RatFunc>(coords.begin(), coords.size()));
}

/// h(a) = h((1 : a)) = deg(a).
inline HeightValue height_ratfunc(const RatFunc& a) { return {Rat(a.degree())}; }

/// Height of f as a polynomial in (y, y') over Q(t): zero for a single (y, y')-monomial, otherwise
/// the height of its coefficient point, which is deg(normalize(f), t).
inline HeightValue height_diffpoly(const DiffPoly& f) {
  require_nonzero(f, "height_diffpoly");
  if (support(f).size() == 1) return {Rat(0)};
  return {Rat(normalize(f).poly().degree_in(kT))};
}

inline HeightValue height_diffpoly(const std::map<std::pair<int, int>, RatFunc>& coeffs) {
  std::size_t nonzero = 0;
  for (const auto& [jk, c] : coeffs) nonzero += c.is_zero() ? 0 : 1;
  if (nonzero == 0) throw DomainError("height_diffpoly: the zero differential polynomial");
  if (nonzero == 1) return {Rat(0)};
  return {Rat(normalize(coeffs).poly().degree_in(kT))};
}

/// Places at which some coordinate has a zero or a pole, plus the place at infinity.
inline std::vector<Place> relevant_places(std::span<const RatFunc> coords) {
  std::vector<UniPoly> irreducibles;
  auto collect = [&](const UniPoly& p) {
    if (p.degree() < 1) return;
    for (const auto& f : factor_over_q(p))
      if (std::find(irreducibles.begin(), irreducibles.end(), f.poly) == irreducibles.end())
        irreducibles.push_back(f.poly);
  };
  for (const auto& a : coords) {
    if (a.is_zero()) continue;
    collect(a.num());
    collect(a.den());
  }
  std::vector<Place> places;
  for (auto& u : irreducibles) places.push_back(Place::finite(std::move(u)));
  places.push_back(Place::infinite());
  return places;
}

/// Independent route to the height: the sum over places of max_i(-ord_p(a_i)), each finite
/// orbit counted with its number of points.
inline HeightValue height_sum_oracle(std::span<const RatFunc> coords) {
  detail::require_nonzero_tuple(coords, "height_sum_oracle");
  Rat total = 0;
  for (const auto& place : relevant_places(coords)) {
    std::optional<int> best;
    for (const auto& a : coords) {
      auto o = ord_at(a, place);
      if (!o) continue;
      best = best ? std::max(*best, -*o) : -*o;
    }
    total += Rat(place.weight() * *best);
  }
  return {total};
}

inline HeightValue height_sum_oracle(std::initializer_list<RatFunc> coords) {
  return height_sum_oracle(std::span<const RatFunc>(coords.begin(), coords.size()));
}

}  // namespace aode
