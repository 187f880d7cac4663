#pragma once

#include <vector>

#include "pn/groupoid.hpp"
#include "pn/report.hpp"
#include "pn/tensor.hpp"

namespace pn {

/// Algebroid-level data on a base chart: a bivector and an endomorphism.
struct AlgebroidData {
  AlgebroidData(Bivector lambda_, EndoField n_);
  const ChartPtr& base() const { return lambda.space(); }
  Bivector lambda;
  EndoField n;
};

/// The four structure conditions at the algebroid level: Schouten square,
/// torsion, sharp compatibility, concomitant. All four passing makes the
/// data a (Lambda, n)-structure.
CheckReport run_algebroid_suite(const AlgebroidData& data);

/// Groupoid-level verdicts for tensors on a pair groupoid's total space:
/// the four manifold-level conditions, both multiplicativity checks, and
/// (informationally) invariance of P and N under the given convention.
CheckReport run_groupoid_suite(const PairGroupoid& G, const Bivector& P, const EndoField& N,
                               const EndoField& n_base, Convention conv = Convention::Right);

/// Extends (Lambda, n) over the pair groupoid, reruns the structure checks
/// there, restricts back, and cross-checks that every algebroid verdict
/// matches its groupoid counterpart and that restriction is an exact round
/// trip. The bivector-multiplicativity verdict is reported informationally
/// and excluded from the matching: an invariant extension with nonzero
/// sharp map fails composability preservation on this groupoid, so the
/// correspondence asserts only the four structure conditions plus endo
/// multiplicativity.
CheckReport run_correspondence(const AlgebroidData& data, Convention conv);

/// Note attached to bivector-multiplicativity failures of invariant
/// extensions.
extern const char* const kInvariantExtensionMultiplicativityNote;

/// Fixed mixed corpus (>= 20 instances) spanning all pass/fail combinations
/// of the four structure conditions: constant, so(3)-type linear, and
/// perturbed non-Poisson bivectors against scalar, constant-diagonal, and
/// torsionful endomorphisms.
std::vector<AlgebroidData> standard_corpus();

}  // namespace pn
