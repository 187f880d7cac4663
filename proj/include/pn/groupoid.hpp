#pragma once

#include <map>
#include <string>
#include <vector>

#include "pn/calculus.hpp"
#include "pn/report.hpp"
#include "pn/tensor.hpp"

namespace pn {

/// The pair groupoid of a chart M: arrows are pairs (x, y) on the doubled
/// chart, an arrow (x, y) goes from y to x under the convention s(x,y) = y,
/// t(x,y) = x, which is the one compatible with the composition
/// (x,y).(y,z) = (x,z). The doubled chart keeps the base names for the
/// x block; y-block names are derived deterministically (x1 -> y1 when the
/// base is x-named, otherwise a "y_" prefix).
class PairGroupoid {
 public:
  static PairGroupoid over(ChartPtr base);

  const ChartPtr& base() const { return base_; }
  const ChartPtr& total() const { return total_; }
  int n() const { return base_->dim(); }

  /// Base polynomial as a function of the x block.
  Poly lift_x(const Poly& base_poly) const;
  /// Base polynomial as a function of the y block.
  Poly lift_y(const Poly& base_poly) const;
  /// Substitute x <-> y on the total chart (the inversion diffeomorphism).
  Poly swap_blocks(const Poly& total_poly) const;
  /// Substitute y := x and read the result on the base chart.
  Poly at_units(const Poly& total_poly) const;

 private:
  PairGroupoid(ChartPtr base, ChartPtr total) : base_(std::move(base)), total_(std::move(total)) {}
  ChartPtr base_;
  ChartPtr total_;
};

// --------------------------------------------------------------------------
// Formal elements. A formal point is an n-tuple of polynomials over some
// working chart (typically fresh symbols); structural maps shuffle blocks
// and check composability as exact polynomial identities, so any identity
// verified on formal symbols is universally quantified.
// --------------------------------------------------------------------------

using FormalPoint = std::vector<Poly>;

bool formal_equal(const FormalPoint& a, const FormalPoint& b);
FormalPoint formal_negate(const FormalPoint& a);

/// Arrow (x, y) of the pair groupoid: from y to x.
struct Arrow {
  FormalPoint x, y;
  bool operator==(const Arrow& o) const { return formal_equal(x, o.x) && formal_equal(y, o.y); }
};

/// Element of the tangent groupoid: tangent vector (v, w) at (x, y).
struct TangentElement {
  Arrow at;
  FormalPoint v, w;
  bool operator==(const TangentElement& o) const {
    return at == o.at && formal_equal(v, o.v) && formal_equal(w, o.w);
  }
};

/// Element of the cotangent groupoid: covector (xi, eta) at (x, y).
struct CotangentElement {
  Arrow at;
  FormalPoint xi, eta;
  bool operator==(const CotangentElement& o) const {
    return at == o.at && formal_equal(xi, o.xi) && formal_equal(eta, o.eta);
  }
};

/// Tangent vector at a base point (element of TM).
struct PointedVector {
  FormalPoint at, vec;
  bool operator==(const PointedVector& o) const {
    return formal_equal(at, o.at) && formal_equal(vec, o.vec);
  }
};

/// Covector at a base point (element of the dual bundle over M).
struct PointedCovector {
  FormalPoint at, cov;
  bool operator==(const PointedCovector& o) const {
    return formal_equal(at, o.at) && formal_equal(cov, o.cov);
  }
};

// Base structural maps: s(x,y) = y, t(x,y) = x, u(x) = (x,x),
// i(x,y) = (y,x), m((x,y),(y,z)) = (x,z).
FormalPoint source(const Arrow& g);
FormalPoint target(const Arrow& g);
Arrow unit_arrow(const FormalPoint& p);
Arrow inverse(const Arrow& g);
Arrow multiply(const Arrow& g, const Arrow& h);  // throws NonComposableError

// Tangent maps: the derivatives of the base maps (all of which are linear
// block shuffles): Ts(v,w) = w at y, Tt(v,w) = v at x, Tu(v) = (v,v),
// Ti(v,w) = (w,v), Tm((v,w),(w,u)) = (v,u).
PointedVector tangent_source(const TangentElement& V);
PointedVector tangent_target(const TangentElement& V);
TangentElement tangent_unit(const PointedVector& pv);
TangentElement tangent_inverse(const TangentElement& V);
TangentElement tangent_multiply(const TangentElement& V, const TangentElement& W);

// Cotangent maps under the sign convention that makes every groupoid axiom
// an exact identity: t~(xi,eta) = xi at x, s~(xi,eta) = -eta at y,
// u~(alpha) = (alpha,-alpha), i~(xi,eta) = (-eta,-xi),
// m~((xi,eta),(-eta,zeta)) = (xi,zeta).
PointedCovector cotangent_source(const CotangentElement& C);
PointedCovector cotangent_target(const CotangentElement& C);
CotangentElement cotangent_unit(const PointedCovector& pc);
CotangentElement cotangent_inverse(const CotangentElement& C);
CotangentElement cotangent_multiply(const CotangentElement& C1, const CotangentElement& C2);

/// All four groupoid axioms (source/target of products, associativity,
/// units, inverses) for the base, tangent, and cotangent groupoids, checked
/// on fresh formal symbols. Twelve entries.
CheckReport groupoid_axioms_report(const PairGroupoid& G);

// --------------------------------------------------------------------------
// Invariant extension and restriction of algebroid data.
// --------------------------------------------------------------------------

enum class Convention { Right, Left };
const char* convention_name(Convention c);

/// Right: (X(x), 0) — the source-vertical field that right-translates X.
/// Left is the image of the right extension under the inversion
/// diffeomorphism, computed by pushforward rather than hand-coded.
VectorField extend_vector(const PairGroupoid& G, const VectorField& X, Convention conv);
Bivector extend_bivector(const PairGroupoid& G, const Bivector& L, Convention conv);
/// Block diagonal n(x) (+) n(y); the inversion pushforward fixes it, so
/// both conventions coincide. This is the unique profile that maps
/// invariant fields to invariant fields with base companion n, so the
/// base-level endomorphism paired with the extension is n itself.
EndoField extend_endo(const PairGroupoid& G, const EndoField& n, Convention conv);
/// x-block extension of a trivector (used to compare Schouten squares
/// across extension).
Trivector extend_trivector(const PairGroupoid& G, const Trivector& T, Convention conv);

/// Pushforward along the inversion (x,y) -> (y,x).
VectorField inversion_pushforward(const PairGroupoid& G, const VectorField& V);
Bivector inversion_pushforward(const PairGroupoid& G, const Bivector& P);
EndoField inversion_pushforward(const PairGroupoid& G, const EndoField& N);

/// Thrown when a bivector on the total space does not restrict to algebroid
/// data: components outside the convention's block survive at the units.
struct RestrictionError : Error {
  RestrictionError(std::string what, std::string witness_)
      : Error(std::move(what)), witness(std::move(witness_)) {}
  std::string witness;
};

Bivector restrict_bivector(const PairGroupoid& G, const Bivector& P, Convention conv = Convention::Right);
EndoField restrict_endo(const PairGroupoid& G, const EndoField& N, Convention conv = Convention::Right);

struct InvarianceResult {
  bool invariant = false;
  std::string witness;  // first failing component, "" when invariant
};

InvarianceResult is_invariant(const PairGroupoid& G, const Bivector& P, Convention conv);
InvarianceResult is_invariant(const PairGroupoid& G, const EndoField& N, Convention conv);

// --------------------------------------------------------------------------
// Multiplicativity checkers. Identities are verified over a polynomial ring
// extended by formal point coordinates and formal (co)vector components, so
// a pass is universally quantified, not sampled.
// --------------------------------------------------------------------------

struct MorphismCheck {
  bool ok = false;
  std::string condition;  // name of the first failing condition, "" if ok
  std::string witness;    // first nonzero residual, canonical expression
};

/// Is the sharp map of P a groupoid morphism from the cotangent groupoid to
/// the tangent groupoid? Three conditions, each an exact identity in formal
/// symbols (x, y, z; xi, eta, zeta):
///   (a) base maps exist: Tt.P# depends only on (x, xi), Ts.P# only on
///       (y, eta), so each factors through t~/s~;
///   (b) composability is preserved: on the locus xi' = -eta,
///       Ts(P# C1) = Tt(P# C2);
///   (c) products map to products: P#(m~(C1, C2)) = Tm(P# C1, P# C2).
MorphismCheck check_bivector_multiplicative(const PairGroupoid& G, const Bivector& P);

/// Is (N, n_M) a multiplicative (1,1)-tensor? Four exact identities in
/// formal symbols (x, y, z; v, w, u): Ts.N = n_M.Ts, Tt.N = n_M.Tt,
/// N.Tu = Tu.n_M, and N(Tm(V, W)) = Tm(NV, NW) on the composable locus.
MorphismCheck check_endo_multiplicative(const PairGroupoid& G, const EndoField& N,
                                        const EndoField& n_base);

}  // namespace pn
