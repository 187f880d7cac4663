#include "pn/tensor.hpp"

#include <algorithm>

#include "pn/error.hpp"

namespace pn {

namespace {

std::vector<Poly> zero_components(const ChartPtr& space, std::size_t count) {
  return std::vector<Poly>(count, Poly::zero(space));
}

bool all_zero(const std::vector<Poly>& v) {
  return std::all_of(v.begin(), v.end(), [](const Poly& p) { return p.is_zero(); });
}

void check_index(int i, int dim, const char* what) {
  if (i < 0 || i >= dim) throw IndexError(std::string(what) + ": index out of range");
}

}  // namespace

// ---------------------------------------------------------------------- //

VectorField::VectorField(ChartPtr space)
    : space_(space), comp_(zero_components(space_, static_cast<std::size_t>(space_->dim()))) {}

VectorField::VectorField(ChartPtr space, std::vector<Poly> components)
    : space_(std::move(space)), comp_(std::move(components)) {
  if (static_cast<int>(comp_.size()) != space_->dim()) {
    throw IndexError("vector field: component count must equal chart dimension");
  }
  for (const auto& p : comp_) require_same_chart(space_, p.space(), "vector field");
}

void VectorField::set_component(int i, Poly p) {
  check_index(i, dim(), "vector field");
  require_same_chart(space_, p.space(), "vector field");
  comp_[static_cast<std::size_t>(i)] = std::move(p);
}

bool VectorField::is_zero() const { return all_zero(comp_); }

VectorField operator+(const VectorField& a, const VectorField& b) {
  require_same_chart(a.space_, b.space_, "vector add");
  VectorField r(a.space_);
  for (int i = 0; i < a.dim(); ++i) r.set_component(i, a.component(i) + b.component(i));
  return r;
}

VectorField operator-(const VectorField& a, const VectorField& b) {
  require_same_chart(a.space_, b.space_, "vector sub");
  VectorField r(a.space_);
  for (int i = 0; i < a.dim(); ++i) r.set_component(i, a.component(i) - b.component(i));
  return r;
}

VectorField operator-(const VectorField& a) {
  VectorField r(a.space_);
  for (int i = 0; i < a.dim(); ++i) r.set_component(i, -a.component(i));
  return r;
}

VectorField operator*(const Poly& f, const VectorField& X) {
  require_same_chart(f.space(), X.space_, "scalar * vector");
  VectorField r(X.space_);
  for (int i = 0; i < X.dim(); ++i) r.set_component(i, f * X.component(i));
  return r;
}

// ---------------------------------------------------------------------- //

OneForm::OneForm(ChartPtr space)
    : space_(space), comp_(zero_components(space_, static_cast<std::size_t>(space_->dim()))) {}

OneForm::OneForm(ChartPtr space, std::vector<Poly> components)
    : space_(std::move(space)), comp_(std::move(components)) {
  if (static_cast<int>(comp_.size()) != space_->dim()) {
    throw IndexError("one-form: component count must equal chart dimension");
  }
  for (const auto& p : comp_) require_same_chart(space_, p.space(), "one-form");
}

void OneForm::set_component(int i, Poly p) {
  check_index(i, dim(), "one-form");
  require_same_chart(space_, p.space(), "one-form");
  comp_[static_cast<std::size_t>(i)] = std::move(p);
}

bool OneForm::is_zero() const { return all_zero(comp_); }

OneForm operator+(const OneForm& a, const OneForm& b) {
  require_same_chart(a.space_, b.space_, "form add");
  OneForm r(a.space_);
  for (int i = 0; i < a.dim(); ++i) r.set_component(i, a.component(i) + b.component(i));
  return r;
}

OneForm operator-(const OneForm& a, const OneForm& b) {
  require_same_chart(a.space_, b.space_, "form sub");
  OneForm r(a.space_);
  for (int i = 0; i < a.dim(); ++i) r.set_component(i, a.component(i) - b.component(i));
  return r;
}

OneForm operator-(const OneForm& a) {
  OneForm r(a.space_);
  for (int i = 0; i < a.dim(); ++i) r.set_component(i, -a.component(i));
  return r;
}

OneForm operator*(const Poly& f, const OneForm& a) {
  require_same_chart(f.space(), a.space_, "scalar * form");
  OneForm r(a.space_);
  for (int i = 0; i < a.dim(); ++i) r.set_component(i, f * a.component(i));
  return r;
}

// ---------------------------------------------------------------------- //

Bivector::Bivector(ChartPtr space)
    : space_(space),
      upper_(zero_components(space_, static_cast<std::size_t>(space_->dim() * (space_->dim() - 1) / 2))) {}

int Bivector::slot(int i, int j) const {
  int n = dim();
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

Poly Bivector::component(int i, int j) const {
  check_index(i, dim(), "bivector");
  check_index(j, dim(), "bivector");
  if (i == j) return Poly::zero(space_);
  if (i < j) return upper_[static_cast<std::size_t>(slot(i, j))];
  return -upper_[static_cast<std::size_t>(slot(j, i))];
}

void Bivector::set_component(int i, int j, Poly p) {
  check_index(i, dim(), "bivector");
  check_index(j, dim(), "bivector");
  if (i >= j) {
    throw IndexError("bivector: only strictly upper-triangular components (i < j) are writable");
  }
  require_same_chart(space_, p.space(), "bivector");
  upper_[static_cast<std::size_t>(slot(i, j))] = std::move(p);
}

bool Bivector::is_zero() const { return all_zero(upper_); }

Bivector operator+(const Bivector& a, const Bivector& b) {
  require_same_chart(a.space_, b.space_, "bivector add");
  Bivector r(a.space_);
  for (std::size_t s = 0; s < a.upper_.size(); ++s) r.upper_[s] = a.upper_[s] + b.upper_[s];
  return r;
}

Bivector operator-(const Bivector& a, const Bivector& b) {
  require_same_chart(a.space_, b.space_, "bivector sub");
  Bivector r(a.space_);
  for (std::size_t s = 0; s < a.upper_.size(); ++s) r.upper_[s] = a.upper_[s] - b.upper_[s];
  return r;
}

Bivector operator-(const Bivector& a) {
  Bivector r(a.space_);
  for (std::size_t s = 0; s < a.upper_.size(); ++s) r.upper_[s] = -a.upper_[s];
  return r;
}

Bivector operator*(const Poly& f, const Bivector& P) {
  require_same_chart(f.space(), P.space_, "scalar * bivector");
  Bivector r(P.space_);
  for (std::size_t s = 0; s < P.upper_.size(); ++s) r.upper_[s] = f * P.upper_[s];
  return r;
}

// ---------------------------------------------------------------------- //

namespace {
int triple_count(int n) { return n * (n - 1) * (n - 2) / 6; }
}  // namespace

Trivector::Trivector(ChartPtr space)
    : space_(space), comp_(zero_components(space_, static_cast<std::size_t>(triple_count(space_->dim())))) {}

int Trivector::slot(int i, int j, int k) const {
  // Lexicographic rank of (i, j, k) among strictly increasing triples.
  int n = dim();
  int rank = 0;
  for (int a = 0; a < i; ++a) rank += (n - 1 - a) * (n - 2 - a) / 2;
  for (int b = i + 1; b < j; ++b) rank += n - 1 - b;
  rank += k - j - 1;
  return rank;
}

Poly Trivector::component(int i, int j, int k) const {
  check_index(i, dim(), "trivector");
  check_index(j, dim(), "trivector");
  check_index(k, dim(), "trivector");
  if (i == j || j == k || i == k) return Poly::zero(space_);
  // Sort and track the permutation sign.
  int a = i, b = j, c = k;
  int sign = 1;
  if (a > b) { std::swap(a, b); sign = -sign; }
  if (b > c) { std::swap(b, c); sign = -sign; }
  if (a > b) { std::swap(a, b); sign = -sign; }
  const Poly& stored = comp_[static_cast<std::size_t>(slot(a, b, c))];
  return sign > 0 ? stored : -stored;
}

void Trivector::set_component(int i, int j, int k, Poly p) {
  check_index(i, dim(), "trivector");
  check_index(j, dim(), "trivector");
  check_index(k, dim(), "trivector");
  if (!(i < j && j < k)) {
    throw IndexError("trivector: only strictly increasing index triples are writable");
  }
  require_same_chart(space_, p.space(), "trivector");
  comp_[static_cast<std::size_t>(slot(i, j, k))] = std::move(p);
}

bool Trivector::is_zero() const { return all_zero(comp_); }

Trivector::Index3 Trivector::first_nonzero() const {
  int n = dim();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        if (!comp_[static_cast<std::size_t>(slot(i, j, k))].is_zero()) return {i, j, k};
      }
    }
  }
  return {-1, -1, -1};
}

// ---------------------------------------------------------------------- //

EndoField::EndoField(ChartPtr space)
    : space_(space),
      m_(zero_components(space_, static_cast<std::size_t>(space_->dim() * space_->dim()))) {}

EndoField EndoField::identity(const ChartPtr& space) {
  EndoField n(space);
  for (int i = 0; i < space->dim(); ++i) n.set_entry(i, i, Poly::constant(space, Rational(1)));
  return n;
}

const Poly& EndoField::entry(int i, int j) const {
  check_index(i, dim(), "endomorphism");
  check_index(j, dim(), "endomorphism");
  return m_[static_cast<std::size_t>(i * dim() + j)];
}

void EndoField::set_entry(int i, int j, Poly p) {
  check_index(i, dim(), "endomorphism");
  check_index(j, dim(), "endomorphism");
  require_same_chart(space_, p.space(), "endomorphism");
  m_[static_cast<std::size_t>(i * dim() + j)] = std::move(p);
}

VectorField EndoField::column(int j) const {
  VectorField r(space_);
  for (int i = 0; i < dim(); ++i) r.set_component(i, entry(i, j));
  return r;
}

VectorField EndoField::apply(const VectorField& X) const {
  require_same_chart(space_, X.space(), "endomorphism apply");
  VectorField r(space_);
  for (int i = 0; i < dim(); ++i) {
    Poly acc(space_);
    for (int j = 0; j < dim(); ++j) acc += entry(i, j) * X.component(j);
    r.set_component(i, acc);
  }
  return r;
}

bool EndoField::is_zero() const { return all_zero(m_); }

EndoField operator-(const EndoField& a, const EndoField& b) {
  require_same_chart(a.space_, b.space_, "endo sub");
  EndoField r(a.space_);
  for (int i = 0; i < a.dim(); ++i) {
    for (int j = 0; j < a.dim(); ++j) r.set_entry(i, j, a.entry(i, j) - b.entry(i, j));
  }
  return r;
}

// ---------------------------------------------------------------------- //

Poly pairing(const OneForm& a, const VectorField& X) {
  require_same_chart(a.space(), X.space(), "pairing");
  Poly acc(a.space());
  for (int i = 0; i < a.dim(); ++i) acc += a.component(i) * X.component(i);
  return acc;
}

Poly bivector_apply(const Bivector& P, const OneForm& a, const OneForm& b) {
  require_same_chart(P.space(), a.space(), "bivector apply");
  require_same_chart(P.space(), b.space(), "bivector apply");
  Poly acc(P.space());
  for (int i = 0; i < P.dim(); ++i) {
    for (int j = i + 1; j < P.dim(); ++j) {
      acc += P.component(i, j) * (a.component(i) * b.component(j) - a.component(j) * b.component(i));
    }
  }
  return acc;
}

Poly trivector_apply(const Trivector& T, const OneForm& a, const OneForm& b, const OneForm& c) {
  require_same_chart(T.space(), a.space(), "trivector apply");
  Poly acc(T.space());
  int n = T.dim();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        if (i == j || j == k || i == k) continue;
        acc += T.component(i, j, k) * a.component(i) * b.component(j) * c.component(k);
      }
    }
  }
  return acc;
}

OneForm coordinate_differential(const ChartPtr& space, int i) {
  OneForm a(space);
  a.set_component(i, Poly::constant(space, Rational(1)));
  return a;
}

VectorField coordinate_field(const ChartPtr& space, int i) {
  VectorField x(space);
  x.set_component(i, Poly::constant(space, Rational(1)));
  return x;
}

}  // namespace pn
