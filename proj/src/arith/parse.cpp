#include "frobroot/arith/parse.hpp"

#include <cctype>

#include "frobroot/errors.hpp"

namespace frobroot::arith {

namespace {

class Parser {
 public:
  Parser(const Field* F, const std::string& s, char var) : F_(F), s_(s), var_(var) {}

  RatFunc parse() {
    RatFunc r = expr();
    skip();
    if (pos_ != s_.size()) error("unexpected character");
    return r;
  }

 private:
  [[noreturn]] void error(const std::string& what) {
    fail(ErrorKind::InvalidInput, "arith", what + " at position " + std::to_string(pos_) + " in '" + s_ + "'");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  int64_t integer(bool allow_sign) {
    skip();
    bool neg = false;
    if (allow_sign && pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
      neg = s_[pos_] == '-';
      ++pos_;
      skip();
    }
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) error("expected integer");
    int64_t v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      if (v > (int64_t{1} << 55)) error("integer too large");
      v = v * 10 + (s_[pos_] - '0');
      ++pos_;
    }
    return neg ? -v : v;
  }

  RatFunc expr() {
    skip();
    RatFunc acc(F_);
    bool neg = false;
    if (accept('-'))
      neg = true;
    else
      accept('+');
    RatFunc t = term();
    acc = neg ? -t : t;
    while (true) {
      if (accept('+'))
        acc = acc + term();
      else if (accept('-'))
        acc = acc - term();
      else
        break;
    }
    return acc;
  }

  RatFunc term() {
    RatFunc acc = factor();
    while (accept('*')) acc = acc * factor();
    return acc;
  }

  RatFunc factor() {
    skip();
    if (pos_ >= s_.size()) error("unexpected end of input");
    const char c = s_[pos_];
    RatFunc base(F_);
    if (c == '(') {
      ++pos_;
      base = expr();
      if (!accept(')')) error("expected ')'");
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      base = RatFunc::constant(F_, F_->from_int(integer(false)));
    } else if (c == 'g') {
      ++pos_;
      int64_t k = 1;
      if (accept('^')) k = integer(true);
      return RatFunc::constant(F_, F_->gen_pow(k));
    } else if (c == var_) {
      ++pos_;
      int64_t k = 1;
      if (accept('^')) k = integer(true);
      return RatFunc::monomial(F_, F_->one(), k);
    } else {
      error(std::string("unexpected '") + c + "'");
    }
    if (accept('^')) {
      const int64_t k = integer(true);
      if (base.is_zero() && k < 0) error("negative power of zero");
      base = base.pow(k);
    }
    return base;
  }

  const Field* F_;
  const std::string& s_;
  char var_;
  size_t pos_ = 0;
};

}  // namespace

RatFunc parse_scalar(const Field* F, const std::string& text, char var) { return Parser(F, text, var).parse(); }

Poly parse_poly(const Field* F, const std::string& text, char var) {
  RatFunc r = parse_scalar(F, text, var);
  if (!r.is_poly()) fail(ErrorKind::InvalidInput, "arith", "'" + text + "' is not a polynomial");
  return r.num().scaled(F->inv(r.den().lead()));
}

Fe parse_element(const Field* F, const std::string& text) {
  RatFunc r = parse_scalar(F, text, '\0');
  if (!r.is_poly() || r.num().degree() > 0)
    fail(ErrorKind::InvalidInput, "arith", "'" + text + "' is not a field element");
  return r.num().coeff(0);
}

}  // namespace frobroot::arith
