#include "dsurf/parse.hpp"

#include <cctype>
#include <sstream>

namespace dsurf {

namespace {

class Parser {
 public:
  Parser(std::string_view text, FieldSpec field, const VarList& vars)
      : text_(text), field_(field), vars_(vars) {}

  Poly parse() {
    Poly p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }

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

  bool at_digit() const {
    return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
  }

  mpz_class integer() {
    skip_ws();
    std::size_t start = pos_;
    while (at_digit()) ++pos_;
    if (start == pos_) fail("expected integer literal");
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  Poly expr() {
    Poly acc = term();
    for (;;) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        return acc;
    }
  }

  Poly term() {
    Poly acc = unary();
    for (;;) {
      if (accept('*')) {
        acc *= unary();
      } else if (accept('/')) {
        std::size_t at = pos_;
        Poly den = unary();
        if (!den.is_constant()) {
          pos_ = at;
          fail("divisor must be a constant");
        }
        if (den.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by zero at position " + std::to_string(at));
        acc = acc.scaled(den.constant_term().inverse());
      } else {
        return acc;
      }
    }
  }

  Poly unary() {
    if (accept('-')) return -unary();
    return power();
  }

  Poly power() {
    Poly base = primary();
    if (accept('^')) {
      std::size_t at = pos_;
      mpz_class e = integer();
      if (!e.fits_uint_p() || e >= (1UL << 31)) {
        pos_ = at;
        fail("exponent too large");
      }
      return base.pow(static_cast<unsigned>(e.get_ui()));
    }
    return base;
  }

  Poly primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Poly inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      mpq_class value(integer());
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        mpz_class den = integer();
        if (den == 0) {
          pos_ = start;
          fail("zero denominator");
        }
        value = mpq_class(value.get_num(), den);
        value.canonicalize();
      }
      try {
        return Poly::constant(field_, vars_, Scalar(field_, value));
      } catch (const Error& e) {
        throw Error(e.kind(), std::string(e.what()) + " at position " + std::to_string(start));
      }
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      for (const auto& v : vars_)
        if (v == name) return Poly::variable(field_, vars_, name);
      throw Error(ErrorKind::UnknownVariable,
                  "unknown variable '" + name + "' at position " + std::to_string(start));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  FieldSpec field_;
  const VarList& vars_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(std::string_view text, FieldSpec field, const VarList& vars) {
  return Parser(text, field, vars).parse();
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    bool negative = field_.is_rationals() && c.rational() < 0;
    Scalar mag = negative ? -c : c;
    if (first)
      os << (negative ? "-" : "");
    else
      os << (negative ? " - " : " + ");
    first = false;

    bool wrote = false;
    if (!mag.is_one()) {
      os << mag.str();
      wrote = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (wrote) os << '*';
      os << (*vars_)[i];
      if (e[i] > 1) os << '^' << e[i];
      wrote = true;
    }
    if (!wrote) os << '1';
  }
  return os.str();
}

}  // namespace dsurf
