#pragma once

#include <cstdint>
#include <random>

#include "pn/poly.hpp"

namespace pn {

/// Deterministic random source. All randomized corpora and the numeric
/// oracle derive from this so that a fixed seed reproduces a run bit for
/// bit; distributions use plain modulo on the raw stream rather than
/// std::uniform_int_distribution, whose output is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  /// Uniform-ish integer in [lo, hi], inclusive.
  int uniform_int(int lo, int hi) {
    auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(next() % span);
  }

  bool coin() { return (next() & 1u) != 0; }

  /// Numerator in [-num_bound, num_bound], denominator in [1, den_bound].
  Rational rational(int num_bound, int den_bound) {
    return Rational(uniform_int(-num_bound, num_bound), uniform_int(1, den_bound));
  }

  /// Value in [-1, 1] with denominator at most den_bound.
  Rational rational_in_unit(int den_bound) {
    int den = uniform_int(1, den_bound);
    return Rational(uniform_int(-den, den), den);
  }

 private:
  std::mt19937_64 eng_;
};

/// Random sparse polynomial with bounded degree, term count, and
/// coefficient size. May be zero.
Poly random_poly(Rng& rng, const ChartPtr& space, int max_degree, int max_terms, int coeff_bound);

}  // namespace pn
