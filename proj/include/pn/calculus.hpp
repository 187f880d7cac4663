#pragma once

#include <optional>
#include <string>

#include "pn/error.hpp"
#include "pn/report.hpp"
#include "pn/tensor.hpp"

namespace pn {

/// [X, Y]^i = sum_j (X^j d_j Y^i - Y^j d_j X^i).
VectorField lie_bracket(const VectorField& X, const VectorField& Y);

/// Schouten square of a bivector. Components are normalized by the
/// Jacobiator identity: schouten_square(P) applied to (df, dg, dh) equals
/// 2 * jacobiator(P, f, g, h) for all f, g, h; concretely
/// [P,P]^{ijk} = 2 * sum_cyc(i,j,k) sum_l P^{il} d_l P^{jk}.
Trivector schouten_square(const Bivector& P);

/// {f, g} = P(df, dg).
Poly poisson_bracket(const Bivector& P, const Poly& f, const Poly& g);

/// {f,{g,h}} + {g,{h,f}} + {h,{f,g}}. Independent of schouten_square:
/// computed by nested Poisson brackets, not by the trivector formula.
Poly jacobiator(const Bivector& P, const Poly& f, const Poly& g, const Poly& h);

/// Sharp map: sharp(P, a)^i = sum_j P^{ji} a_j, so <b, sharp(P, a)> = P(a, b).
VectorField sharp(const Bivector& P, const OneForm& a);

/// Transpose action on forms: (N* a)_j = sum_i N^i_j a_i, so
/// <N* a, X> = <a, N X>.
OneForm endo_dual(const EndoField& N, const OneForm& a);

/// Compose N with the sharp map of P. `ok` iff the composite is the sharp
/// map of a bivector (N o P# = P# o N*); then `np` holds that bivector.
/// Otherwise `witness` is the first nonzero entry of the symmetric part,
/// (N.P#)^{ij} + (N.P#)^{ji}, with its index pair.
struct EndoBivectorResult {
  bool ok = false;
  std::optional<Bivector> np;
  int witness_i = -1, witness_j = -1;
  std::optional<Poly> witness;
};
EndoBivectorResult endo_compose_bivector(const EndoField& N, const Bivector& P);

/// Nijenhuis torsion evaluated on coordinate-field pairs:
/// tau(d_i, d_j) = [N d_i, N d_j] - N([N d_i, d_j] + [d_i, N d_j]).
/// Tensoriality makes the coordinate pairs a complete representation.
class Torsion {
 public:
  Torsion(ChartPtr space, std::vector<VectorField> pairs);
  const ChartPtr& space() const { return space_; }
  int dim() const { return space_->dim(); }
  /// tau(d_i, d_j) with sign resolution; zero field for i == j.
  VectorField component(int i, int j) const;
  bool is_zero() const;
  /// "tau(d<i>,d<j>)[<a>] = expr" for the first nonzero entry; "" if zero.
  std::string first_witness() const;

 private:
  ChartPtr space_;
  std::vector<VectorField> pairs_;  // (i, j), i < j, lexicographic
};
Torsion nijenhuis_torsion(const EndoField& N);

/// [X, Y]_N = [NX, Y] + [X, NY] - N[X, Y].
VectorField deformed_bracket(const EndoField& N, const VectorField& X, const VectorField& Y);

/// df, with components d_i f.
OneForm d_function(const Poly& f);

/// (L_X b)_i = sum_j (X^j d_j b_i + b_j d_i X^j).
OneForm lie_derivative_oneform(const VectorField& X, const OneForm& b);

/// [a, b]_P = L_{P# a} b - L_{P# b} a - d(P(a, b)).
OneForm form_bracket(const Bivector& P, const OneForm& a, const OneForm& b);

/// Thrown by magri_morosi when N o P# is not a bivector; carries the
/// symmetric-part witness.
struct NotABivectorError : Error {
  NotABivectorError(std::string what, int i, int j, Poly w)
      : Error(std::move(what)), witness_i(i), witness_j(j), witness(std::move(w)) {}
  int witness_i, witness_j;
  Poly witness;
};

/// C(P, N)(a, b) = [a, b]_{NP} - ([N*a, b]_P + [a, N*b]_P - N*[a, b]_P).
/// Requires endo_compose_bivector(N, P).ok; otherwise throws
/// NotABivectorError with the antisymmetry witness.
OneForm magri_morosi(const Bivector& P, const EndoField& N, const OneForm& a, const OneForm& b);

/// Four verdicts: [P,P] = 0; torsion(N) = 0; N o P# = P# o N*; and
/// C(P, N)(dx_i, dx_j) = 0 for all i < j (sufficient by function-linearity
/// of the concomitant). When the third check fails the fourth reports
/// Error rather than computing with a non-bivector.
CheckReport pn_manifold_check(const Bivector& P, const EndoField& N);

}  // namespace pn
