#include "pn/calculus.hpp"

#include <sstream>
#include <utility>

#include "pn/error.hpp"

namespace pn {

VectorField lie_bracket(const VectorField& X, const VectorField& Y) {
  require_same_chart(X.space(), Y.space(), "lie_bracket");
  const auto& sp = X.space();
  VectorField r(sp);
  for (int i = 0; i < X.dim(); ++i) {
    Poly acc(sp);
    for (int j = 0; j < X.dim(); ++j) {
      acc += X.component(j) * Y.component(i).partial(j);
      acc -= Y.component(j) * X.component(i).partial(j);
    }
    r.set_component(i, acc);
  }
  return r;
}

Trivector schouten_square(const Bivector& P) {
  const auto& sp = P.space();
  int n = P.dim();
  Trivector T(sp);
  const Rational two(2);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        Poly acc(sp);
        for (int l = 0; l < n; ++l) {
          acc += P.component(i, l) * P.component(j, k).partial(l);
          acc += P.component(j, l) * P.component(k, i).partial(l);
          acc += P.component(k, l) * P.component(i, j).partial(l);
        }
        T.set_component(i, j, k, two * acc);
      }
    }
  }
  return T;
}

Poly poisson_bracket(const Bivector& P, const Poly& f, const Poly& g) {
  require_same_chart(P.space(), f.space(), "poisson_bracket");
  require_same_chart(P.space(), g.space(), "poisson_bracket");
  Poly acc(P.space());
  for (int i = 0; i < P.dim(); ++i) {
    for (int j = i + 1; j < P.dim(); ++j) {
      acc += P.component(i, j) * (f.partial(i) * g.partial(j) - f.partial(j) * g.partial(i));
    }
  }
  return acc;
}

Poly jacobiator(const Bivector& P, const Poly& f, const Poly& g, const Poly& h) {
  return poisson_bracket(P, f, poisson_bracket(P, g, h)) +
         poisson_bracket(P, g, poisson_bracket(P, h, f)) +
         poisson_bracket(P, h, poisson_bracket(P, f, g));
}

VectorField sharp(const Bivector& P, const OneForm& a) {
  require_same_chart(P.space(), a.space(), "sharp");
  VectorField r(P.space());
  for (int i = 0; i < P.dim(); ++i) {
    Poly acc(P.space());
    for (int j = 0; j < P.dim(); ++j) acc += P.component(j, i) * a.component(j);
    r.set_component(i, acc);
  }
  return r;
}

OneForm endo_dual(const EndoField& N, const OneForm& a) {
  require_same_chart(N.space(), a.space(), "endo_dual");
  OneForm r(N.space());
  for (int j = 0; j < N.dim(); ++j) {
    Poly acc(N.space());
    for (int i = 0; i < N.dim(); ++i) acc += N.entry(i, j) * a.component(i);
    r.set_component(j, acc);
  }
  return r;
}

EndoBivectorResult endo_compose_bivector(const EndoField& N, const Bivector& P) {
  require_same_chart(N.space(), P.space(), "endo_compose_bivector");
  const auto& sp = P.space();
  int n = P.dim();

  // A = N . P#, the matrix acting on forms by a |-> N(sharp(P, a)).
  // A^{ij} = sum_l N^i_l P^{jl}... transposed sharp: (P# a)^i = sum_j P^{ji} a_j,
  // so the matrix of P# has (i, j) entry P^{ji}, and A(i, j) = sum_l N^i_l P^{jl}.
  std::vector<Poly> A(static_cast<std::size_t>(n * n), Poly::zero(sp));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Poly acc(sp);
      for (int l = 0; l < n; ++l) acc += N.entry(i, l) * P.component(j, l);
      A[static_cast<std::size_t>(i * n + j)] = std::move(acc);
    }
  }
  auto at = [&A, n](int i, int j) -> const Poly& { return A[static_cast<std::size_t>(i * n + j)]; };

  EndoBivectorResult res;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      Poly sym = at(i, j) + at(j, i);
      if (!sym.is_zero()) {
        res.ok = false;
        res.witness_i = i;
        res.witness_j = j;
        res.witness = std::move(sym);
        return res;
      }
    }
  }

  // Antisymmetric: A is the sharp matrix of the bivector NP with
  // (NP)^{ij} = A(j, i).
  res.ok = true;
  Bivector np(sp);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) np.set_component(i, j, at(j, i));
  }
  res.np = std::move(np);
  return res;
}

Torsion::Torsion(ChartPtr space, std::vector<VectorField> pairs)
    : space_(std::move(space)), pairs_(std::move(pairs)) {}

VectorField Torsion::component(int i, int j) const {
  int n = dim();
  if (i < 0 || i >= n || j < 0 || j >= n) throw IndexError("torsion: index out of range");
  if (i == j) return VectorField(space_);
  bool flip = i > j;
  if (flip) std::swap(i, j);
  const VectorField& t = pairs_[static_cast<std::size_t>(i * n - i * (i + 1) / 2 + (j - i - 1))];
  return flip ? -t : t;
}

bool Torsion::is_zero() const {
  for (const auto& t : pairs_) {
    if (!t.is_zero()) return false;
  }
  return true;
}

std::string Torsion::first_witness() const {
  int n = dim();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      VectorField t = component(i, j);
      for (int a = 0; a < n; ++a) {
        if (!t.component(a).is_zero()) {
          std::ostringstream os;
          os << "tau(d" << i + 1 << ",d" << j + 1 << ")[" << a + 1 << "] = " << t.component(a).str();
          return os.str();
        }
      }
    }
  }
  return "";
}

Torsion nijenhuis_torsion(const EndoField& N) {
  const auto& sp = N.space();
  int n = N.dim();
  std::vector<VectorField> pairs;
  pairs.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  for (int i = 0; i < n; ++i) {
    VectorField Ni = N.column(i);
    for (int j = i + 1; j < n; ++j) {
      VectorField Nj = N.column(j);
      // On coordinate fields [d_i, d_j] = 0, so the last torsion term drops.
      VectorField t = lie_bracket(Ni, Nj) -
                      N.apply(lie_bracket(Ni, coordinate_field(sp, j)) +
                              lie_bracket(coordinate_field(sp, i), Nj));
      pairs.push_back(std::move(t));
    }
  }
  return Torsion(sp, std::move(pairs));
}

VectorField deformed_bracket(const EndoField& N, const VectorField& X, const VectorField& Y) {
  require_same_chart(N.space(), X.space(), "deformed_bracket");
  require_same_chart(N.space(), Y.space(), "deformed_bracket");
  return lie_bracket(N.apply(X), Y) + lie_bracket(X, N.apply(Y)) - N.apply(lie_bracket(X, Y));
}

OneForm d_function(const Poly& f) {
  OneForm r(f.space());
  for (int i = 0; i < f.dim(); ++i) r.set_component(i, f.partial(i));
  return r;
}

OneForm lie_derivative_oneform(const VectorField& X, const OneForm& b) {
  require_same_chart(X.space(), b.space(), "lie_derivative_oneform");
  const auto& sp = X.space();
  OneForm r(sp);
  for (int i = 0; i < X.dim(); ++i) {
    Poly acc(sp);
    for (int j = 0; j < X.dim(); ++j) {
      acc += X.component(j) * b.component(i).partial(j);
      acc += b.component(j) * X.component(j).partial(i);
    }
    r.set_component(i, acc);
  }
  return r;
}

OneForm form_bracket(const Bivector& P, const OneForm& a, const OneForm& b) {
  require_same_chart(P.space(), a.space(), "form_bracket");
  require_same_chart(P.space(), b.space(), "form_bracket");
  return lie_derivative_oneform(sharp(P, a), b) - lie_derivative_oneform(sharp(P, b), a) -
         d_function(bivector_apply(P, a, b));
}

OneForm magri_morosi(const Bivector& P, const EndoField& N, const OneForm& a, const OneForm& b) {
  require_same_chart(P.space(), N.space(), "magri_morosi");
  require_same_chart(P.space(), a.space(), "magri_morosi");
  require_same_chart(P.space(), b.space(), "magri_morosi");
  EndoBivectorResult np = endo_compose_bivector(N, P);
  if (!np.ok) {
    std::ostringstream os;
    os << "magri_morosi: N.P# is not antisymmetric; symmetric part (" << np.witness_i + 1 << ","
       << np.witness_j + 1 << ") = " << np.witness->str();
    throw NotABivectorError(os.str(), np.witness_i, np.witness_j, *np.witness);
  }
  return form_bracket(*np.np, a, b) -
         (form_bracket(P, endo_dual(N, a), b) + form_bracket(P, a, endo_dual(N, b)) -
          endo_dual(N, form_bracket(P, a, b)));
}

CheckReport pn_manifold_check(const Bivector& P, const EndoField& N) {
  require_same_chart(P.space(), N.space(), "pn_manifold_check");
  const auto& sp = P.space();
  int n = P.dim();
  CheckReport report;

  Trivector sq = schouten_square(P);
  if (sq.is_zero()) {
    report.add("poisson.schouten_square_zero", Verdict::Pass);
  } else {
    auto idx = sq.first_nonzero();
    // Report the Jacobiator on the offending coordinate triple; it is half
    // the trivector component, which is the friendlier witness.
    Poly jac = jacobiator(P, Poly::coordinate(sp, idx.i), Poly::coordinate(sp, idx.j),
                          Poly::coordinate(sp, idx.k));
    std::ostringstream os;
    os << "jacobiator(" << sp->name(idx.i) << "," << sp->name(idx.j) << "," << sp->name(idx.k)
       << ") = " << jac.str();
    report.add("poisson.schouten_square_zero", Verdict::Fail, os.str());
  }

  Torsion tau = nijenhuis_torsion(N);
  if (tau.is_zero()) {
    report.add("nijenhuis.torsion_zero", Verdict::Pass);
  } else {
    report.add("nijenhuis.torsion_zero", Verdict::Fail, tau.first_witness());
  }

  EndoBivectorResult np = endo_compose_bivector(N, P);
  if (np.ok) {
    report.add("compat.sharp_intertwine", Verdict::Pass);
  } else {
    std::ostringstream os;
    os << "(N.P#)^(" << np.witness_i + 1 << "," << np.witness_j + 1 << ") + (N.P#)^("
       << np.witness_j + 1 << "," << np.witness_i + 1 << ") = " << np.witness->str();
    report.add("compat.sharp_intertwine", Verdict::Fail, os.str());
  }

  if (!np.ok) {
    report.add("compat.concomitant_zero", Verdict::Error, "",
               "not evaluated: N.P# is not a bivector");
    return report;
  }

  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      OneForm c = magri_morosi(P, N, coordinate_differential(sp, i), coordinate_differential(sp, j));
      if (!c.is_zero()) {
        for (int k = 0; k < n; ++k) {
          if (!c.component(k).is_zero()) {
            std::ostringstream os;
            os << "C(d" << sp->name(i) << ",d" << sp->name(j) << ")[" << sp->name(k)
               << "] = " << c.component(k).str();
            report.add("compat.concomitant_zero", Verdict::Fail, os.str());
            return report;
          }
        }
      }
    }
  }
  report.add("compat.concomitant_zero", Verdict::Pass);
  return report;
}

}  // namespace pn
