#pragma once

// Shared helpers for the test suites: deterministic random data and the
// independent oracles the implementation is checked against. Everything in
// namespace testutil is test-only and must stay independent of the library
// code paths it is used to verify.

#include <cctype>
#include <string>
#include <vector>

#include "pn/chart.hpp"
#include "pn/error.hpp"
#include "pn/random.hpp"
#include "pn/rational.hpp"

namespace testutil {

inline pn::ChartPtr chart(std::initializer_list<std::string> names) {
  return pn::ChartSpace::create(std::vector<std::string>(names));
}

inline pn::ChartPtr r2() { return chart({"x1", "x2"}); }
inline pn::ChartPtr r3() { return chart({"x1", "x2", "x3"}); }

// ---------------------------------------------------------------------------
// Independent expression evaluator: a self-contained recursive-descent
// evaluator that computes the value of an expression string at a point by
// direct rational arithmetic, never building a polynomial. Oracle for
// parse_expr + Poly::eval.
// ---------------------------------------------------------------------------
class DirectEvaluator {
 public:
  DirectEvaluator(const std::string& text, const std::vector<std::string>& names,
                  const std::vector<pn::Rational>& point)
      : text_(text), names_(names), point_(point) {}

  pn::Rational run() {
    pn::Rational v = expr();
    ws();
    if (pos_ != text_.size()) throw pn::Error("direct evaluator: trailing input");
    return v;
  }

 private:
  void ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  char look() {
    ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  pn::Rational expr() {
    bool neg = eat('-');
    pn::Rational acc = term();
    if (neg) acc = -acc;
    while (true) {
      if (eat('+')) {
        bool n = eat('-');
        pn::Rational t = term();
        acc += n ? -t : t;
      } else if (eat('-')) {
        bool n = eat('-');
        pn::Rational t = term();
        acc -= n ? -t : t;
      } else {
        break;
      }
    }
    return acc;
  }

  pn::Rational term() {
    pn::Rational acc = factor();
    while (eat('*')) acc *= factor();
    return acc;
  }

  pn::Rational factor() {
    pn::Rational b = base();
    if (eat('^')) {
      long e = std::stol(uint_tok());
      pn::Rational r(1);
      for (long k = 0; k < e; ++k) r *= b;
      return r;
    }
    return b;
  }

  pn::Rational base() {
    char c = look();
    if (c == '(') {
      ++pos_;
      pn::Rational v = expr();
      if (!eat(')')) throw pn::Error("direct evaluator: expected ')'");
      return v;
    }
    if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
      bool neg = eat('-');
      std::string num = uint_tok();
      pn::Rational v = pn::Rational::from_string(num);
      if (look() == '/') {
        ++pos_;
        v = v / pn::Rational::from_string(uint_tok());
      }
      return neg ? -v : v;
    }
    std::string id = ident_tok();
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i] == id) return point_[i];
    }
    throw pn::Error("direct evaluator: unknown identifier " + id);
  }

  std::string uint_tok() {
    ws();
    std::size_t s = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (s == pos_) throw pn::Error("direct evaluator: expected integer");
    return text_.substr(s, pos_ - s);
  }

  std::string ident_tok() {
    ws();
    std::size_t s = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    if (s == pos_) throw pn::Error("direct evaluator: expected identifier");
    return text_.substr(s, pos_ - s);
  }

  std::string text_;
  const std::vector<std::string>& names_;
  const std::vector<pn::Rational>& point_;
  std::size_t pos_ = 0;
};

inline pn::Rational direct_eval(const std::string& text, const std::vector<std::string>& names,
                                const std::vector<pn::Rational>& point) {
  return DirectEvaluator(text, names, point).run();
}

// Random grammar-conform expression text. Depth-bounded so expansion stays
// cheap; exercises parens, powers, signs, and rationals.
inline std::string random_expr_text(pn::Rng& rng, const std::vector<std::string>& names, int depth) {
  auto rational_tok = [&rng]() {
    int num = rng.uniform_int(-9, 9);
    int den = rng.uniform_int(1, 9);
    std::string s = std::to_string(num);
    if (rng.coin()) s += "/" + std::to_string(den);
    return s;
  };
  if (depth <= 0) {
    if (rng.coin()) return rational_tok();
    return names[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(names.size()) - 1))];
  }
  switch (rng.uniform_int(0, 4)) {
    case 0: {
      return random_expr_text(rng, names, depth - 1) + " + " + random_expr_text(rng, names, depth - 1);
    }
    case 1: {
      return random_expr_text(rng, names, depth - 1) + " - " + random_expr_text(rng, names, depth - 1);
    }
    case 2: {
      return random_expr_text(rng, names, depth - 1) + "*" + random_expr_text(rng, names, depth - 1);
    }
    case 3: {
      return "(" + random_expr_text(rng, names, depth - 1) + ")^" + std::to_string(rng.uniform_int(0, 3));
    }
    default:
      return "(" + random_expr_text(rng, names, depth - 1) + ")";
  }
}

inline std::vector<pn::Rational> random_point(pn::Rng& rng, int dim, int den_bound = 8) {
  std::vector<pn::Rational> pt;
  pt.reserve(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) pt.push_back(rng.rational_in_unit(den_bound));
  return pt;
}

}  // namespace testutil
