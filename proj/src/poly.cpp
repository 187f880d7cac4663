#include "pn/poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "pn/error.hpp"

namespace pn {

namespace {

int degree_of(const Monomial& m) {
  return std::accumulate(m.begin(), m.end(), 0, [](int acc, std::uint32_t e) {
    return acc + static_cast<int>(e);
  });
}

// Descending graded-lex: higher total degree first, ties broken by
// lexicographically larger exponent vector first.
bool print_before(const std::pair<Monomial, Rational>& a, const std::pair<Monomial, Rational>& b) {
  int da = degree_of(a.first), db = degree_of(b.first);
  if (da != db) return da > db;
  return a.first > b.first;
}

}  // namespace

Poly Poly::constant(ChartPtr space, Rational value) {
  Poly p(std::move(space));
  if (!value.is_zero()) {
    p.terms_.emplace(Monomial(static_cast<std::size_t>(p.dim()), 0), std::move(value));
  }
  return p;
}

Poly Poly::coordinate(const ChartPtr& space, int i) {
  if (i < 0 || i >= space->dim()) throw IndexError("coordinate index out of range");
  Monomial m(static_cast<std::size_t>(space->dim()), 0);
  m[static_cast<std::size_t>(i)] = 1;
  return monomial(space, std::move(m), Rational(1));
}

Poly Poly::monomial(const ChartPtr& space, Monomial exps, Rational coeff) {
  if (static_cast<int>(exps.size()) != space->dim()) {
    throw IndexError("monomial length does not match chart dimension");
  }
  Poly p(space);
  if (!coeff.is_zero()) p.terms_.emplace(std::move(exps), std::move(coeff));
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && degree_of(terms_.begin()->first) == 0);
}

Rational Poly::constant_value() const {
  Monomial zero(static_cast<std::size_t>(dim()), 0);
  return coefficient(zero);
}

Rational Poly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

int Poly::total_degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, degree_of(m));
  return d;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Poly operator+(const Poly& a, const Poly& b) {
  require_same_chart(a.space_, b.space_, "poly add");
  Poly r = a;
  for (const auto& [m, c] : b.terms_) r.add_term(m, c);
  return r;
}

Poly operator-(const Poly& a, const Poly& b) {
  require_same_chart(a.space_, b.space_, "poly sub");
  Poly r = a;
  for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
  return r;
}

Poly operator*(const Poly& a, const Poly& b) {
  require_same_chart(a.space_, b.space_, "poly mul");
  Poly r(a.space_);
  Monomial prod(static_cast<std::size_t>(a.dim()), 0);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      for (std::size_t k = 0; k < prod.size(); ++k) prod[k] = ma[k] + mb[k];
      r.add_term(prod, ca * cb);
    }
  }
  return r;
}

Poly operator-(const Poly& a) {
  Poly r(a.space_);
  for (const auto& [m, c] : a.terms_) r.terms_.emplace(m, -c);
  return r;
}

Poly operator*(const Rational& c, const Poly& p) {
  Poly r(p.space_);
  if (c.is_zero()) return r;
  for (const auto& [m, pc] : p.terms_) r.terms_.emplace(m, c * pc);
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  require_same_chart(space_, o.space_, "poly add");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  require_same_chart(space_, o.space_, "poly sub");
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly Poly::pow(std::uint32_t e) const {
  Poly r = Poly::constant(space_, Rational(1));
  Poly base = *this;
  while (e > 0) {
    if (e & 1u) r = r * base;
    e >>= 1u;
    if (e > 0) base = base * base;
  }
  return r;
}

Poly Poly::partial(int i) const {
  if (i < 0 || i >= dim()) throw IndexError("partial: coordinate index out of range");
  auto idx = static_cast<std::size_t>(i);
  Poly r(space_);
  for (const auto& [m, c] : terms_) {
    if (m[idx] == 0) continue;
    Monomial dm = m;
    dm[idx] -= 1;
    r.add_term(dm, Rational(static_cast<long>(m[idx])) * c);
  }
  return r;
}

Rational Poly::eval(std::span<const Rational> point) const {
  if (static_cast<int>(point.size()) != dim()) {
    throw IndexError("eval: point length does not match chart dimension");
  }
  Rational acc(0);
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (std::size_t k = 0; k < m.size(); ++k) {
      for (std::uint32_t e = 0; e < m[k]; ++e) t *= point[k];
    }
    acc += t;
  }
  return acc;
}

double Poly::eval_double(std::span<const double> point) const {
  if (static_cast<int>(point.size()) != dim()) {
    throw IndexError("eval: point length does not match chart dimension");
  }
  double acc = 0.0;
  for (const auto& [m, c] : terms_) {
    double t = c.to_double();
    for (std::size_t k = 0; k < m.size(); ++k) {
      for (std::uint32_t e = 0; e < m[k]; ++e) t *= point[k];
    }
    acc += t;
  }
  return acc;
}

bool Poly::depends_on(int i) const {
  if (i < 0 || i >= dim()) throw IndexError("depends_on: coordinate index out of range");
  auto idx = static_cast<std::size_t>(i);
  return std::any_of(terms_.begin(), terms_.end(),
                     [idx](const auto& t) { return t.first[idx] > 0; });
}

Poly Poly::terms_depending_on(std::span<const int> vars) const {
  Poly r(space_);
  for (const auto& [m, c] : terms_) {
    bool touches = std::any_of(vars.begin(), vars.end(), [&m](int v) {
      return m[static_cast<std::size_t>(v)] > 0;
    });
    if (touches) r.terms_.emplace(m, c);
  }
  return r;
}

Poly Poly::reindex(const ChartPtr& target, std::span<const int> var_map) const {
  if (static_cast<int>(var_map.size()) != dim()) {
    throw IndexError("reindex: variable map length does not match chart dimension");
  }
  for (int t : var_map) {
    if (t < 0 || t >= target->dim()) throw IndexError("reindex: target index out of range");
  }
  Poly r(target);
  Monomial img(static_cast<std::size_t>(target->dim()), 0);
  for (const auto& [m, c] : terms_) {
    std::fill(img.begin(), img.end(), 0u);
    for (std::size_t k = 0; k < m.size(); ++k) {
      img[static_cast<std::size_t>(var_map[k])] += m[k];
    }
    r.add_term(img, c);
  }
  return r;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Monomial, Rational>> ordered(terms_.begin(), terms_.end());
  std::sort(ordered.begin(), ordered.end(), print_before);

  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : ordered) {
    Rational a = c.abs();
    if (first) {
      if (c.sign() < 0) os << "-";
      first = false;
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    bool has_vars = degree_of(m) > 0;
    bool coeff_shown = !a.is_one() || !has_vars;
    if (coeff_shown) os << a.str();
    bool first_factor = !coeff_shown;
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (m[k] == 0) continue;
      if (!first_factor || coeff_shown) os << "*";
      first_factor = false;
      os << space_->name(static_cast<int>(k));
      if (m[k] > 1) os << "^" << m[k];
    }
  }
  return os.str();
}

}  // namespace pn
