#include "detflow/polyalg/parser.hpp"

#include <cctype>
#include <vector>

#include "detflow/errors.hpp"
#include "detflow/polyalg/determinant.hpp"

namespace detflow {

namespace {

class Parser {
 public:
  Parser(std::string_view src, Shape shape) : src_(src), shape_(shape) {}

  RationalFn parse() {
    RationalFn value = expr();
    skip_space();
    if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return value;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, pos_); }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  char peek() {
    skip_space();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= src_.size()) fail(std::string("expected '") + c + "' but input ended");
      fail(std::string("expected '") + c + "'");
    }
  }

  RationalFn constant(const GaussRat& c) const { return RationalFn(Poly::constant(shape_, c)); }

  RationalFn expr() {
    RationalFn value = term();
    for (;;) {
      if (accept('+')) {
        value = value + term();
      } else if (accept('-')) {
        value = value - term();
      } else {
        return value;
      }
    }
  }

  RationalFn term() {
    RationalFn value = unary();
    for (;;) {
      if (accept('*')) {
        value = value * unary();
      } else if (peek() == '/') {
        std::size_t at = pos_;
        ++pos_;
        RationalFn divisor = unary();
        if (divisor.is_zero()) throw ParseError("division by zero", at);
        value = value / divisor;
      } else {
        return value;
      }
    }
  }

  RationalFn unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  RationalFn power() {
    RationalFn base = primary();
    if (!accept('^')) return base;
    bool negative = accept('-');
    std::size_t at = pos_;
    long e = integer();
    if (negative && base.is_zero()) throw ParseError("negative power of zero", at);
    if (e > 64) throw ParseError("exponent too large", at);
    return base.pow(negative ? -static_cast<int>(e) : static_cast<int>(e));
  }

  long integer() {
    skip_space();
    std::size_t start = pos_;
    long value = 0;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      value = value * 10 + (src_[pos_] - '0');
      if (value > 1'000'000) fail("integer too large");
      ++pos_;
    }
    if (pos_ == start) fail("expected an integer");
    return value;
  }

  std::vector<int> index_list() {
    std::vector<int> out{static_cast<int>(integer())};
    while (accept(',')) out.push_back(static_cast<int>(integer()));
    return out;
  }

  GaussRat number() {
    std::size_t start = pos_;
    mpz_class num = 0;
    mpz_class den = 1;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
      num = num * 10 + (src_[pos_++] - '0');
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      std::size_t frac_start = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        num = num * 10 + (src_[pos_++] - '0');
        den *= 10;
      }
      if (pos_ == frac_start) throw ParseError("expected digits after '.'", pos_);
    }
    if (pos_ == start) fail("expected a number");
    mpq_class q(num, den);
    q.canonicalize();
    if (pos_ < src_.size() && src_[pos_] == 'i') {
      ++pos_;
      return {0, q};
    }
    return {q, 0};
  }

  bool keyword(std::string_view word) {
    skip_space();
    if (src_.substr(pos_, word.size()) != word) return false;
    std::size_t after = pos_ + word.size();
    if (after < src_.size() && std::isalnum(static_cast<unsigned char>(src_[after]))) return false;
    pos_ = after;
    return true;
  }

  RationalFn primary() {
    char c = peek();
    if (c == '\0') fail("unexpected end of input");
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return constant(number());
    if (accept('(')) {
      RationalFn inner = expr();
      expect(')');
      return inner;
    }
    std::size_t at = pos_;
    if (keyword("det")) {
      expect('(');
      std::vector<int> rows = index_list();
      expect(';');
      std::vector<int> cols = index_list();
      expect(')');
      if (rows.size() != cols.size())
        throw ParseError("det needs as many rows as columns", at);
      try {
        return RationalFn(submatrix_determinant(shape_, rows, cols));
      } catch (const IndexOutOfRange& e) {
        throw IndexOutOfRange(std::string(e.what()) + " at position " + std::to_string(at));
      }
    }
    if (keyword("x")) {
      expect('[');
      int i = static_cast<int>(integer());
      expect(']');
      expect('[');
      int j = static_cast<int>(integer());
      expect(']');
      if (!shape_.contains(i, j)) {
        throw IndexOutOfRange("coordinate x[" + std::to_string(i) + "][" + std::to_string(j) +
                              "] outside " + shape_.to_string() + " at position " +
                              std::to_string(at));
      }
      return RationalFn(Poly::variable(shape_, i, j));
    }
    if (keyword("i")) return constant(GaussRat::imaginary_unit());
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view src_;
  Shape shape_;
  std::size_t pos_ = 0;
};

}  // namespace

RationalFn parse_rational(std::string_view src, Shape shape) { return Parser(src, shape).parse(); }

Expression parse_expr(std::string_view src, Shape shape) {
  RationalFn value = parse_rational(src, shape);
  if (value.is_polynomial()) return value.as_poly();
  return value;
}

}  // namespace detflow
