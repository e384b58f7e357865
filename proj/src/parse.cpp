#include "pfib/parse.hpp"

#include <cctype>

namespace pfib {
namespace {

class Parser {
 public:
  Parser(const std::string& src, const FieldSpec& field) : src_(src), field_(field) {}

  Polynomial run() {
    Polynomial p = expr();
    skip_ws();
    if (pos_ != src_.size()) fail("unexpected trailing input");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  bool eat(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    Polynomial acc = eat('-') ? -term() : term();
    for (;;) {
      if (eat('+')) acc = acc + term();
      else if (eat('-')) acc = acc - term();
      else break;
    }
    return acc;
  }

  Polynomial term() {
    Polynomial acc = factor();
    for (;;) {
      if (eat('*')) {
        acc = acc * factor();
      } else if (peek() == '/') {
        fail("division is not supported");
      } else {
        break;
      }
    }
    return acc;
  }

  Polynomial factor() {
    Polynomial base = atom();
    if (eat('^')) {
      long e = integer_literal();
      if (e < 0) fail("negative exponent");
      Polynomial pow = Polynomial::constant(Scalar::one(field_));
      for (long k = 0; k < e; ++k) pow = pow * base;
      return pow;
    }
    return base;
  }

  Polynomial atom() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      Polynomial p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (c == '-') {
      ++pos_;
      return -factor();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return variable();
    fail("expected a term");
  }

  long integer_literal() {
    skip_ws();
    bool neg = eat('-');
    skip_ws();
    if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
      fail("expected an integer");
    long v = 0;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      v = v * 10 + (src_[pos_] - '0');
      ++pos_;
    }
    return neg ? -v : v;
  }

  Polynomial number() {
    BigInt num = big_digits();
    if (pos_ < src_.size() && src_[pos_] == '/') {
      ++pos_;
      if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
        fail("expected a denominator");
      BigInt den = big_digits();
      if (den == 0) fail("zero denominator");
      return Polynomial::constant(Scalar::of_fraction(num, den, field_));
    }
    return Polynomial::constant(Scalar::of_fraction(num, 1, field_));
  }

  BigInt big_digits() {
    BigInt v = 0;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      v = v * 10 + (src_[pos_] - '0');
      ++pos_;
    }
    return v;
  }

  Polynomial variable() {
    std::size_t start = pos_;
    char head = src_[pos_++];
    if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      pos_ = start;
      fail("unknown variable");
    }
    int idx = src_[pos_++] - '0';
    if (head == 't' && idx <= 1) return Polynomial::variable(kTBase + idx, field_);
    if (head == 'x' && idx <= 4) return Polynomial::variable(kXBase + idx, field_);
    pos_ = start;
    fail("unknown variable");
  }

  const std::string& src_;
  FieldSpec field_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(const std::string& src, const FieldSpec& field) {
  return Parser(src, field).run();
}

}  // namespace pfib
