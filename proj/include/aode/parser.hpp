#pragma once

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "aode/diffpoly.hpp"

namespace aode {

/// Syntax error in an equation, with the 0-based offset of the offending character.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& message)
      : Error("parse error at column " + std::to_string(position + 1) + ": " + message), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// An equation as typed and as parsed.
struct EquationSource {
  std::string raw;
  DiffPoly parsed;
  std::vector<std::string> warnings;
};

namespace detail::parse {

/// Recursive descent over
///   expr   := ('+' | '-')? term (('+' | '-') term)*
///   term   := factor ('*' factor)*
///   factor := base ('^' natural)?
///   base   := rational | 't' | 'y' | "y'" | '(' expr ')'
/// where rational is an integer or integer/integer. Implicit multiplication and division are not
/// part of the language.
class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  DiffPoly parse_all() {
    skip();
    if (at_end()) fail("expected an expression");
    DiffPoly f = expr();
    skip();
    if (peek() == '=') {
      ++pos_;
      skip();
      const std::size_t rhs = pos_;
      if (peek() != '0') fail("only \"= 0\" may follow the expression", rhs);
      ++pos_;
      skip();
      if (!at_end()) fail("only \"= 0\" may follow the expression", rhs);
    }
    if (!at_end()) unexpected();
    return f;
  }

 private:
  static constexpr unsigned kMaxExponent = 1000;

  std::string_view s_;
  std::size_t pos_ = 0;

  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[pos_]; }
  void skip() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(pos_, message); }
  [[noreturn]] void fail(const std::string& message, std::size_t at) const { throw ParseError(at, message); }

  [[noreturn]] void unexpected() const {
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == 't' || c == 'y' || c == '(')
      fail("implicit multiplication is not allowed, use '*'");
    if (c == '/') fail("division is only allowed inside a rational literal such as 1/2");
    fail(std::string("unexpected character '") + c + "'");
  }

  DiffPoly expr() {
    skip();
    bool negate = false;
    if (peek() == '+' || peek() == '-') {
      negate = peek() == '-';
      ++pos_;
    }
    DiffPoly acc = term();
    if (negate) acc = -acc;
    for (;;) {
      skip();
      const char c = peek();
      if (c != '+' && c != '-') return acc;
      ++pos_;
      DiffPoly rhs = term();
      acc = c == '+' ? acc + rhs : acc - rhs;
    }
  }

  DiffPoly term() {
    DiffPoly acc = factor();
    for (;;) {
      skip();
      if (peek() != '*') return acc;
      ++pos_;
      acc = acc * factor();
    }
  }

  DiffPoly factor() {
    DiffPoly b = base();
    skip();
    if (peek() != '^') return b;
    ++pos_;
    skip();
    const std::size_t start = pos_;
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a natural number after '^'");
    Integer e = digits();
    if (e > kMaxExponent) fail("exponent larger than " + std::to_string(kMaxExponent), start);
    return b.pow(static_cast<unsigned>(e.get_ui()));
  }

  Integer digits() {
    const std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    return Integer(std::string(s_.substr(start, pos_ - start)));
  }

  DiffPoly base() {
    skip();
    const std::size_t start = pos_;
    const char c = peek();
    if (at_end()) fail("unexpected end of input, expected a term");
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Integer num = digits();
      Integer den = 1;
      if (peek() == '/') {
        ++pos_;
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected the denominator of a rational literal");
        const std::size_t den_at = pos_;
        den = digits();
        if (sgn(den) == 0) fail("zero denominator", den_at);
      }
      return DiffPoly::constant(make_rat(num, den));
    }
    if (c == 't') {
      ++pos_;
      if (std::isalnum(static_cast<unsigned char>(peek()))) fail("unknown identifier", start);
      return DiffPoly::t();
    }
    if (c == 'y') {
      ++pos_;
      if (peek() == '\'') {
        ++pos_;
        if (peek() == '\'') fail("y'' is not allowed, only first order equations are supported", start);
        return DiffPoly::yp();
      }
      if (std::isalnum(static_cast<unsigned char>(peek()))) fail("unknown identifier", start);
      return DiffPoly::y();
    }
    if (c == '(') {
      ++pos_;
      DiffPoly inner = expr();
      skip();
      if (peek() != ')') at_end() ? fail("missing ')'") : unexpected();
      ++pos_;
      return inner;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) fail("unknown identifier");
    fail(std::string("expected a number, t, y, y' or '(' but found '") + c + "'");
  }
};

}  // namespace detail::parse

/// Parses an equation in t, y and y'. Throws ParseError with the position of the first error.
inline EquationSource parse_equation(std::string_view text) {
  EquationSource src;
  src.raw = std::string(text);
  src.parsed = detail::parse::Parser(text).parse_all();
  if (src.parsed.is_zero()) src.warnings.push_back("the equation is identically zero");
  return src;
}

/// Prints in the input language; parse_equation(print_equation(f)).parsed == f.
inline std::string print_equation(const DiffPoly& f) { return to_string(f); }

}  // namespace aode
