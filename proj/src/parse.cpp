#include "pn/parse.hpp"

#include <cctype>
#include <optional>
#include <string>

#include "pn/error.hpp"

namespace pn {

namespace {

class ExprParser {
 public:
  ExprParser(std::string_view text, const ChartPtr& space) : text_(text), space_(space) {}

  Poly parse() {
    Poly p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at offset " + std::to_string(pos_), pos_);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::optional<char> peek() {
    skip_ws();
    if (pos_ >= text_.size()) return std::nullopt;
    return text_[pos_];
  }

  bool eat(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  // Unsigned integer literal; overflow-safe via string -> Rational later.
  std::string uint_literal() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected an unsigned integer");
    return std::string(text_.substr(start, pos_ - start));
  }

  Poly expr() {
    bool neg = eat('-');  // unary minus at the head of the first term
    Poly acc = term();
    if (neg) acc = -acc;
    while (auto c = peek()) {
      if (*c == '+' || *c == '-') {
        ++pos_;
        bool inner_neg = eat('-');  // allow "a + -b": minus at a term head
        Poly t = term();
        if (inner_neg) t = -t;
        acc = (*c == '+') ? acc + t : acc - t;
      } else {
        break;
      }
    }
    return acc;
  }

  Poly term() {
    Poly acc = factor();
    while (eat('*')) acc = acc * factor();
    return acc;
  }

  Poly factor() {
    Poly b = base();
    if (eat('^')) {
      skip_ws();
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        fail("exponent must be a nonnegative integer literal");
      }
      std::string e = uint_literal();
      unsigned long v = 0;
      try {
        v = std::stoul(e);
      } catch (const std::exception&) {
        fail("exponent out of range");
      }
      if (v > 0xffffffffUL) fail("exponent out of range");
      b = b.pow(static_cast<std::uint32_t>(v));
    }
    return b;
  }

  Poly base() {
    auto c = peek();
    if (!c) fail("unexpected end of expression");
    if (*c == '(') {
      ++pos_;
      Poly p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (*c == '-' || std::isdigit(static_cast<unsigned char>(*c))) return rational_literal();
    if (std::isalpha(static_cast<unsigned char>(*c)) || *c == '_') return coordinate();
    fail(std::string("unexpected character '") + *c + "'");
  }

  Poly rational_literal() {
    bool neg = eat('-');
    skip_ws();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      fail("expected a number after '-'");
    }
    std::string num = uint_literal();
    std::string text = (neg ? "-" : "") + num;
    if (peek() == '/') {
      ++pos_;
      skip_ws();
      std::size_t den_pos = pos_;
      std::string den = uint_literal();
      if (den == "0") {
        pos_ = den_pos;
        fail("zero denominator");
      }
      text += "/" + den;
    }
    return Poly::constant(space_, Rational::from_string(text));
  }

  Poly coordinate() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    std::string name(text_.substr(start, pos_ - start));
    auto idx = space_->index_of(name);
    if (!idx) {
      pos_ = start;
      fail("unknown identifier '" + name + "'");
    }
    return Poly::coordinate(space_, *idx);
  }

  std::string_view text_;
  const ChartPtr& space_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_expr(std::string_view text, const ChartPtr& space) {
  return ExprParser(text, space).parse();
}

}  // namespace pn
