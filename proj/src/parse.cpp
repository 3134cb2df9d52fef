#include "jgeo/parse.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

#include "jgeo/error.hpp"

namespace jgeo {
namespace {

struct FnEntry {
  std::string_view name;
  Op op;
};

constexpr FnEntry kFunctions[] = {
    {"sin", Op::Sin}, {"cos", Op::Cos},   {"tan", Op::Tan},   {"exp", Op::Exp},
    {"log", Op::Log}, {"sqrt", Op::Sqrt}, {"sinh", Op::Sinh}, {"cosh", Op::Cosh},
};

class Parser {
 public:
  Parser(std::string_view src, const Chart& chart) : src_(src), chart_(chart) {}

  ScalarField run() {
    ScalarField e = expr();
    skip_ws();
    if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  ScalarField expr() {
    ScalarField lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = lhs + term();
      } else if (accept('-')) {
        lhs = lhs - term();
      } else {
        return lhs;
      }
    }
  }

  ScalarField term() {
    ScalarField lhs = factor();
    for (;;) {
      if (accept('*')) {
        lhs = lhs * factor();
      } else if (accept('/')) {
        lhs = lhs / factor();
      } else {
        return lhs;
      }
    }
  }

  ScalarField factor() {
    ScalarField b = base();
    if (accept('^')) return pow(b, exponent());
    return b;
  }

  int exponent() {
    skip_ws();
    bool paren = accept('(');
    skip_ws();
    bool negative = false;
    if (pos_ < src_.size() && src_[pos_] == '-') {
      negative = true;
      ++pos_;
      skip_ws();
    }
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (start == pos_) fail("non-integer exponent");
    if (pos_ < src_.size() && (src_[pos_] == '.' || src_[pos_] == 'e' || src_[pos_] == 'E')) {
      fail("non-integer exponent");
    }
    int value = 0;
    auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, value);
    if (ec != std::errc{}) fail("exponent out of range");
    if (paren) expect(')');
    return negative ? -value : value;
  }

  ScalarField base() {
    skip_ws();
    if (pos_ >= src_.size()) fail("unexpected end of input");
    char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      ScalarField e = expr();
      expect(')');
      return e;
    }
    if (c == '-') {
      // binds looser than '^', so -x^2 is -(x^2)
      ++pos_;
      return -factor();
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  ScalarField number() {
    std::size_t start = pos_;
    auto digits = [&] {
      std::size_t s = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      return pos_ - s;
    };
    std::size_t n = digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      n += digits();
    }
    if (n == 0) fail("malformed number");
    // optional exponent, only when digits follow (so "2e" is not swallowed)
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t save = pos_;
      ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (digits() == 0) pos_ = save;
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, v);
    if (ec != std::errc{} || ptr != src_.data() + pos_ || !std::isfinite(v)) {
      pos_ = start;
      fail("malformed number");
    }
    return ScalarField::constant(v);
  }

  ScalarField identifier() {
    std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
      ++pos_;
    }
    std::string_view name = src_.substr(start, pos_ - start);
    std::size_t after = pos_;
    skip_ws();
    bool call = pos_ < src_.size() && src_[pos_] == '(';
    pos_ = after;
    if (call) {
      for (const auto& fn : kFunctions) {
        if (fn.name == name) {
          expect('(');
          ScalarField arg = expr();
          expect(')');
          return make_unary(fn.op, arg);
        }
      }
    }
    if (auto idx = chart_.index_of(name)) return ScalarField::coordinate(*idx);
    pos_ = start;
    fail(call ? "unknown function " + std::string(name) : "unknown identifier " + std::string(name));
  }

  std::string_view src_;
  const Chart& chart_;
  std::size_t pos_ = 0;
};

}  // namespace

ScalarField parse_scalar(std::string_view src, const Chart& chart) { return Parser(src, chart).run(); }

}  // namespace jgeo
