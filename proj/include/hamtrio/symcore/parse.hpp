#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "hamtrio/error.hpp"
#include "hamtrio/symcore/rational_function.hpp"

namespace hamtrio::symcore {

// Recursive-descent parser for the expression grammar
//
//   expr     := ['-'] term (('+'|'-') term)*
//   term     := factor (('*'|'/') factor)*
//   factor   := base ('^' uint)?
//   base     := uint | name | '(' expr ')'
//
// Whitespace is insignificant. Rational literals like 3/4 come out of the
// '/' operator; a leading '-' covers negated expressions.
class ExprParser {
 public:
  ExprParser(std::string_view text, VarTablePtr table)
      : text_(text), table_(std::move(table)) {}

  RationalFunction parse() {
    RationalFunction v = expr();
    skip_ws();
    if (pos_ != text_.size())
      throw ParseError("trailing characters at position " + std::to_string(pos_) +
                       " in expression: " + std::string(text_));
    return v;
  }

 private:
  RationalFunction expr() {
    skip_ws();
    bool neg = false;
    if (peek() == '-') {
      neg = true;
      ++pos_;
    }
    RationalFunction v = term();
    if (neg) v = -v;
    for (;;) {
      skip_ws();
      char c = peek();
      if (c == '+') {
        ++pos_;
        v += term();
      } else if (c == '-') {
        ++pos_;
        v -= term();
      } else {
        return v;
      }
    }
  }

  RationalFunction term() {
    RationalFunction v = factor();
    for (;;) {
      skip_ws();
      char c = peek();
      if (c == '*') {
        ++pos_;
        v *= factor();
      } else if (c == '/') {
        ++pos_;
        RationalFunction d = factor();
        if (d.is_zero())
          throw ParseError("division by the zero polynomial in expression");
        v = v / d;
      } else {
        return v;
      }
    }
  }

  RationalFunction factor() {
    RationalFunction b = base();
    skip_ws();
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      if (!std::isdigit(static_cast<unsigned char>(peek())))
        throw ParseError("exponent must be a non-negative integer");
      std::uint32_t e = uint_lit();
      RationalFunction r = RationalFunction(b.num().pow(e), b.den().pow(e));
      return r;
    }
    return b;
  }

  RationalFunction base() {
    skip_ws();
    char c = peek();
    if (c == '(') {
      ++pos_;
      RationalFunction v = expr();
      skip_ws();
      if (peek() != ')') throw ParseError("missing ')' in expression");
      ++pos_;
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Integer n(0);
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      n = Integer(std::string(text_.substr(start, pos_ - start)));
      return RationalFunction::constant(table_, Rational(n));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      if (!table_->declared(name)) throw ParseError("undeclared name: " + name);
      return RationalFunction::var(table_, name);
    }
    throw ParseError(std::string("unexpected character '") + (c ? std::string(1, c) : "<end>") +
                     "' in expression: " + std::string(text_));
  }

  std::uint32_t uint_lit() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) throw ParseError("expected integer literal");
    unsigned long v = std::stoul(std::string(text_.substr(start, pos_ - start)));
    return static_cast<std::uint32_t>(v);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  std::string_view text_;
  VarTablePtr table_;
  std::size_t pos_ = 0;
};

inline RationalFunction parse_expr(std::string_view text, const VarTablePtr& table) {
  return ExprParser(text, table).parse();
}

inline Polynomial parse_poly(std::string_view text, const VarTablePtr& table) {
  RationalFunction f = parse_expr(text, table);
  if (!f.is_polynomial())
    throw ParseError("expected polynomial, got rational function: " + f.str());
  return f.as_polynomial();
}

}  // namespace hamtrio::symcore
