#pragma once

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

#include "tcad/polynomial.hpp"
#include "tcad/rational.hpp"
#include "tcad/var_order.hpp"

namespace tcad {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line, int column)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                           ": " + what),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

namespace detail {

// expr   := ['+'|'-'] term (('+'|'-') term)*
// term   := factor (('*' factor) | ('/' number))*
// factor := base ['^' integer]
// base   := number | variable | '(' expr ')'
class PolyParser {
 public:
  PolyParser(std::string_view text, const VarOrder& order, int line, int column0)
      : text_(text), order_(order), line_(line), column0_(column0) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, line_, column0_ + static_cast<int>(pos_));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    skip_ws();
    bool neg = false;
    if (accept('-')) {
      neg = true;
    } else {
      accept('+');
    }
    Polynomial acc = term();
    if (neg) acc = -acc;
    while (true) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (true) {
      if (accept('*')) {
        acc *= factor();
      } else if (accept('/')) {
        skip_ws();
        std::size_t at = pos_;
        Rational d = number();
        if (d == 0) {
          pos_ = at;
          fail("division by zero");
        }
        acc = acc.scaled(Rational(1 / d));
      } else {
        skip_ws();
        if (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                    text_[pos_] == '(')) {
          fail("implicit multiplication is not allowed");
        }
        return acc;
      }
    }
  }

  Polynomial factor() {
    Polynomial b = base();
    if (accept('^')) {
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected a non-negative integer exponent");
      std::string digits(text_.substr(start, pos_ - start));
      if (digits.size() > 6) {
        pos_ = start;
        fail("exponent too large");
      }
      b = b.pow(static_cast<unsigned>(std::stoul(digits)));
    }
    return b;
  }

  Rational number() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return Rational(Integer(std::string(text_.substr(start, pos_ - start))));
  }

  Polynomial base() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return Polynomial(number());
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                     text_[pos_] == '_')) {
        ++pos_;
      }
      std::string name(text_.substr(start, pos_ - start));
      auto idx = order_.index_of(name);
      if (!idx) {
        pos_ = start;
        fail("unknown variable '" + name + "'");
      }
      return Polynomial::variable(*idx);
    }
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  const VarOrder& order_;
  int line_;
  int column0_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses a polynomial over the given order; columns in errors are 1-based.
inline Polynomial parse_polynomial(std::string_view text, const VarOrder& order, int line = 1,
                                   int first_column = 1) {
  return detail::PolyParser(text, order, line, first_column).parse();
}

}  // namespace tcad
