#include "pn/rational.hpp"

#include <ostream>

#include "pn/error.hpp"

namespace pn {

Rational::Rational(long num, long den) {
  if (den == 0) throw Error("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational Rational::from_string(std::string_view text) {
  // mpq_class accepts "n/d" but does not canonicalize and is lax about
  // junk; validate the shape here so errors carry a usable message.
  std::string s(text);
  if (s.empty()) throw Error("empty rational literal");
  std::size_t start = (s[0] == '-') ? 1 : 0;
  if (start == s.size()) throw Error("malformed rational literal: " + s);
  bool seen_slash = false;
  for (std::size_t k = start; k < s.size(); ++k) {
    if (s[k] == '/' && !seen_slash && k > start && k + 1 < s.size()) {
      seen_slash = true;
    } else if (s[k] < '0' || s[k] > '9') {
      throw Error("malformed rational literal: " + s);
    }
  }
  mpq_class q(s, 10);
  if (sgn(q.get_den()) == 0) throw Error("rational with zero denominator: " + s);
  q.canonicalize();
  return Rational(std::move(q));
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw Error("rational division by zero");
  return Rational(mpq_class(a.v_ / b.v_));
}

Rational Rational::abs() const {
  return sign() < 0 ? -*this : *this;
}

std::string Rational::str() const {
  if (v_.get_den() == 1) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.str();
}

}  // namespace pn
