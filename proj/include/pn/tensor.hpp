#pragma once

#include <vector>

#include "pn/poly.hpp"

namespace pn {

/// Contravariant field: dim polynomial components X^i.
class VectorField {
 public:
  explicit VectorField(ChartPtr space);
  VectorField(ChartPtr space, std::vector<Poly> components);

  const ChartPtr& space() const { return space_; }
  int dim() const { return space_->dim(); }
  const Poly& component(int i) const { return comp_.at(static_cast<std::size_t>(i)); }
  void set_component(int i, Poly p);
  bool is_zero() const;

  friend VectorField operator+(const VectorField& a, const VectorField& b);
  friend VectorField operator-(const VectorField& a, const VectorField& b);
  friend VectorField operator-(const VectorField& a);
  friend VectorField operator*(const Poly& f, const VectorField& X);
  bool operator==(const VectorField& o) const { return same_chart(space_, o.space_) && comp_ == o.comp_; }

 private:
  ChartPtr space_;
  std::vector<Poly> comp_;
};

/// Covariant field: dim polynomial components a_i.
class OneForm {
 public:
  explicit OneForm(ChartPtr space);
  OneForm(ChartPtr space, std::vector<Poly> components);

  const ChartPtr& space() const { return space_; }
  int dim() const { return space_->dim(); }
  const Poly& component(int i) const { return comp_.at(static_cast<std::size_t>(i)); }
  void set_component(int i, Poly p);
  bool is_zero() const;

  friend OneForm operator+(const OneForm& a, const OneForm& b);
  friend OneForm operator-(const OneForm& a, const OneForm& b);
  friend OneForm operator-(const OneForm& a);
  friend OneForm operator*(const Poly& f, const OneForm& a);
  bool operator==(const OneForm& o) const { return same_chart(space_, o.space_) && comp_ == o.comp_; }

 private:
  ChartPtr space_;
  std::vector<Poly> comp_;
};

/// Antisymmetric 2-contravariant field. Only the strictly upper-triangular
/// components P^{ij}, i < j, are stored; component(i, j) resolves signs and
/// the zero diagonal.
class Bivector {
 public:
  explicit Bivector(ChartPtr space);

  const ChartPtr& space() const { return space_; }
  int dim() const { return space_->dim(); }
  /// Signed lookup: P^{ij} for i<j, -P^{ji} for i>j, 0 on the diagonal.
  Poly component(int i, int j) const;
  /// Writable only for i < j; IndexError otherwise (diagonal included).
  void set_component(int i, int j, Poly p);
  bool is_zero() const;

  friend Bivector operator+(const Bivector& a, const Bivector& b);
  friend Bivector operator-(const Bivector& a, const Bivector& b);
  friend Bivector operator-(const Bivector& a);
  friend Bivector operator*(const Poly& f, const Bivector& P);
  bool operator==(const Bivector& o) const { return same_chart(space_, o.space_) && upper_ == o.upper_; }

 private:
  int slot(int i, int j) const;  // valid for 0 <= i < j < dim
  ChartPtr space_;
  std::vector<Poly> upper_;
};

/// Fully antisymmetric 3-contravariant field; components stored for
/// i < j < k in lexicographic order.
class Trivector {
 public:
  explicit Trivector(ChartPtr space);

  const ChartPtr& space() const { return space_; }
  int dim() const { return space_->dim(); }
  /// Signed lookup; zero whenever two indices repeat.
  Poly component(int i, int j, int k) const;
  void set_component(int i, int j, int k, Poly p);  // requires i < j < k
  bool is_zero() const;
  /// First stored (i, j, k) with a nonzero component, as flat index triple;
  /// only meaningful when !is_zero().
  struct Index3 { int i, j, k; };
  Index3 first_nonzero() const;

  bool operator==(const Trivector& o) const { return same_chart(space_, o.space_) && comp_ == o.comp_; }

 private:
  int slot(int i, int j, int k) const;
  ChartPtr space_;
  std::vector<Poly> comp_;
};

/// (1,1)-tensor field; entry(i, j) = N^i_j, the i-th component of the image
/// of the j-th coordinate field.
class EndoField {
 public:
  explicit EndoField(ChartPtr space);
  static EndoField identity(const ChartPtr& space);

  const ChartPtr& space() const { return space_; }
  int dim() const { return space_->dim(); }
  const Poly& entry(int i, int j) const;
  void set_entry(int i, int j, Poly p);

  /// Image of a coordinate field: the j-th column as a vector field.
  VectorField column(int j) const;
  VectorField apply(const VectorField& X) const;
  bool is_zero() const;

  friend EndoField operator-(const EndoField& a, const EndoField& b);
  bool operator==(const EndoField& o) const { return same_chart(space_, o.space_) && m_ == o.m_; }

 private:
  ChartPtr space_;
  std::vector<Poly> m_;  // row-major
};

/// Natural pairing <a, X> = sum_i a_i X^i.
Poly pairing(const OneForm& a, const VectorField& X);

/// P(a, b) = sum_{ij} P^{ij} a_i b_j over the full antisymmetric array.
Poly bivector_apply(const Bivector& P, const OneForm& a, const OneForm& b);

/// T(a, b, c) = sum_{ijk} T^{ijk} a_i b_j c_k over the full array.
Poly trivector_apply(const Trivector& T, const OneForm& a, const OneForm& b, const OneForm& c);

/// The coordinate differential dx^i.
OneForm coordinate_differential(const ChartPtr& space, int i);

/// The coordinate field (0, ..., 1, ..., 0).
VectorField coordinate_field(const ChartPtr& space, int i);

}  // namespace pn
