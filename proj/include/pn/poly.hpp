#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "pn/chart.hpp"
#include "pn/rational.hpp"

namespace pn {

/// Exponent multi-index; length equals the chart dimension.
using Monomial = std::vector<std::uint32_t>;

/// Sparse multivariate polynomial with exact rational coefficients over a
/// chart. Canonical form is an invariant: no stored coefficient is zero,
/// so structural equality is semantic equality and "is this zero" is a
/// container-emptiness test.
class Poly {
 public:
  explicit Poly(ChartPtr space) : space_(std::move(space)) {}

  static Poly zero(ChartPtr space) { return Poly(std::move(space)); }
  static Poly constant(ChartPtr space, Rational value);
  static Poly coordinate(const ChartPtr& space, int i);
  static Poly monomial(const ChartPtr& space, Monomial exps, Rational coeff);

  const ChartPtr& space() const { return space_; }
  int dim() const { return space_->dim(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Coefficient of the degree-zero monomial (the whole value when constant).
  Rational constant_value() const;
  Rational coefficient(const Monomial& m) const;
  const std::map<Monomial, Rational>& terms() const { return terms_; }
  int total_degree() const;  // 0 for the zero polynomial

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a);
  friend Poly operator*(const Rational& c, const Poly& p);
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly pow(std::uint32_t e) const;

  bool operator==(const Poly& o) const { return same_chart(space_, o.space_) && terms_ == o.terms_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  /// Formal partial derivative in coordinate i (0-based).
  Poly partial(int i) const;

  Rational eval(std::span<const Rational> point) const;
  double eval_double(std::span<const double> point) const;

  bool depends_on(int i) const;
  /// Sum of the terms whose monomial touches any of `vars`. Zero exactly
  /// when the polynomial does not depend on those coordinates.
  Poly terms_depending_on(std::span<const int> vars) const;

  /// Transport onto `target` by re-indexing variables: coordinate i maps to
  /// var_map[i]. Several sources may map to one target (exponents add),
  /// which realizes diagonal substitutions such as y := x.
  Poly reindex(const ChartPtr& target, std::span<const int> var_map) const;

  /// Canonical expression text, re-parseable by parse_expr. Terms print in
  /// descending graded-lexicographic order; "0" for the zero polynomial.
  std::string str() const;

 private:
  void add_term(const Monomial& m, const Rational& c);

  ChartPtr space_;
  std::map<Monomial, Rational> terms_;
};

}  // namespace pn
