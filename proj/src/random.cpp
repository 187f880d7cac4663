#include "pn/random.hpp"

namespace pn {

Poly random_poly(Rng& rng, const ChartPtr& space, int max_degree, int max_terms, int coeff_bound) {
  Poly p(space);
  int terms = rng.uniform_int(0, max_terms);
  for (int t = 0; t < terms; ++t) {
    Monomial m(static_cast<std::size_t>(space->dim()), 0);
    int budget = rng.uniform_int(0, max_degree);
    for (int d = 0; d < budget; ++d) {
      m[static_cast<std::size_t>(rng.uniform_int(0, space->dim() - 1))] += 1;
    }
    p += Poly::monomial(space, std::move(m), rng.rational(coeff_bound, coeff_bound));
  }
  return p;
}

}  // namespace pn
