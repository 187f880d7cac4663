#include "pn/oracle.hpp"

#include <cmath>

#include "pn/random.hpp"

namespace pn::oracle {

using Eigen::MatrixXd;
using Eigen::VectorXd;

ScalarFn lift(const Poly& f) {
  return [f](const VectorXd& p) {
    std::vector<double> pt(p.data(), p.data() + p.size());
    return f.eval_double(pt);
  };
}

VectorFn lift(const VectorField& X) {
  int n = X.dim();
  std::vector<Poly> comp;
  for (int i = 0; i < n; ++i) comp.push_back(X.component(i));
  return [comp, n](const VectorXd& p) {
    std::vector<double> pt(p.data(), p.data() + p.size());
    VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = comp[static_cast<std::size_t>(i)].eval_double(pt);
    return v;
  };
}

VectorFn lift(const OneForm& a) {
  int n = a.dim();
  std::vector<Poly> comp;
  for (int i = 0; i < n; ++i) comp.push_back(a.component(i));
  return [comp, n](const VectorXd& p) {
    std::vector<double> pt(p.data(), p.data() + p.size());
    VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = comp[static_cast<std::size_t>(i)].eval_double(pt);
    return v;
  };
}

MatrixFn lift(const EndoField& N) {
  int n = N.dim();
  std::vector<Poly> entries;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) entries.push_back(N.entry(i, j));
  }
  return [entries, n](const VectorXd& p) {
    std::vector<double> pt(p.data(), p.data() + p.size());
    MatrixXd m(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) m(i, j) = entries[static_cast<std::size_t>(i * n + j)].eval_double(pt);
    }
    return m;
  };
}

MatrixFn lift(const Bivector& P) {
  int n = P.dim();
  std::vector<Poly> entries;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) entries.push_back(P.component(i, j));
  }
  return [entries, n](const VectorXd& p) {
    std::vector<double> pt(p.data(), p.data() + p.size());
    MatrixXd m(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) m(i, j) = entries[static_cast<std::size_t>(i * n + j)].eval_double(pt);
    }
    return m;
  };
}

double partial_diff(const ScalarFn& f, const VectorXd& p, int i) {
  VectorXd hi = p, lo = p;
  hi[i] += kStep;
  lo[i] -= kStep;
  return (f(hi) - f(lo)) / (2.0 * kStep);
}

MatrixXd jacobian(const VectorFn& F, const VectorXd& p, int dim) {
  MatrixXd J(dim, dim);
  for (int j = 0; j < dim; ++j) {
    VectorXd hi = p, lo = p;
    hi[j] += kStep;
    lo[j] -= kStep;
    J.col(j) = (F(hi) - F(lo)) / (2.0 * kStep);
  }
  return J;
}

VectorFn num_lie_bracket(VectorFn X, VectorFn Y) {
  return [X = std::move(X), Y = std::move(Y)](const VectorXd& p) {
    int n = static_cast<int>(p.size());
    return VectorXd(jacobian(Y, p, n) * X(p) - jacobian(X, p, n) * Y(p));
  };
}

VectorFn num_sharp(MatrixFn P, VectorFn a) {
  return [P = std::move(P), a = std::move(a)](const VectorXd& p) {
    return VectorXd(P(p).transpose() * a(p));
  };
}

VectorFn num_endo_dual(MatrixFn N, VectorFn a) {
  return [N = std::move(N), a = std::move(a)](const VectorXd& p) {
    return VectorXd(N(p).transpose() * a(p));
  };
}

VectorFn num_d(ScalarFn f) {
  return [f = std::move(f)](const VectorXd& p) {
    int n = static_cast<int>(p.size());
    VectorXd g(n);
    for (int i = 0; i < n; ++i) g[i] = partial_diff(f, p, i);
    return g;
  };
}

VectorFn num_lie_derivative_oneform(VectorFn X, VectorFn b) {
  return [X = std::move(X), b = std::move(b)](const VectorXd& p) {
    int n = static_cast<int>(p.size());
    return VectorXd(jacobian(b, p, n) * X(p) + jacobian(X, p, n).transpose() * b(p));
  };
}

ScalarFn num_bivector_apply(MatrixFn P, VectorFn a, VectorFn b) {
  return [P = std::move(P), a = std::move(a), b = std::move(b)](const VectorXd& p) {
    return a(p).dot(P(p) * b(p));
  };
}

VectorFn num_form_bracket(MatrixFn P, VectorFn a, VectorFn b) {
  VectorFn la = num_lie_derivative_oneform(num_sharp(P, a), b);
  VectorFn lb = num_lie_derivative_oneform(num_sharp(P, b), a);
  VectorFn dpab = num_d(num_bivector_apply(P, a, b));
  return [la = std::move(la), lb = std::move(lb), dpab = std::move(dpab)](const VectorXd& p) {
    return VectorXd(la(p) - lb(p) - dpab(p));
  };
}

VectorFn num_magri_morosi(MatrixFn P, MatrixFn N, VectorFn a, VectorFn b) {
  // The bivector N.P has full matrix P N^T (so that its sharp map is
  // N o P#).
  MatrixFn NP = [P, N](const VectorXd& p) { return MatrixXd(P(p) * N(p).transpose()); };
  VectorFn t1 = num_form_bracket(NP, a, b);
  VectorFn t2 = num_form_bracket(P, num_endo_dual(N, a), b);
  VectorFn t3 = num_form_bracket(P, a, num_endo_dual(N, b));
  VectorFn t4 = num_endo_dual(N, num_form_bracket(P, a, b));
  return [t1 = std::move(t1), t2 = std::move(t2), t3 = std::move(t3),
          t4 = std::move(t4)](const VectorXd& p) { return VectorXd(t1(p) - t2(p) - t3(p) + t4(p)); };
}

ScalarFn num_poisson_bracket(MatrixFn P, ScalarFn f, ScalarFn g) {
  return [P = std::move(P), f = std::move(f), g = std::move(g)](const VectorXd& p) {
    int n = static_cast<int>(p.size());
    VectorXd df(n), dg(n);
    for (int i = 0; i < n; ++i) {
      df[i] = partial_diff(f, p, i);
      dg[i] = partial_diff(g, p, i);
    }
    return df.dot(P(p) * dg);
  };
}

ScalarFn num_jacobiator(MatrixFn P, ScalarFn f, ScalarFn g, ScalarFn h) {
  ScalarFn fg = num_poisson_bracket(P, f, g);
  ScalarFn gh = num_poisson_bracket(P, g, h);
  ScalarFn hf = num_poisson_bracket(P, h, f);
  ScalarFn a = num_poisson_bracket(P, f, gh);
  ScalarFn b = num_poisson_bracket(P, g, hf);
  ScalarFn c = num_poisson_bracket(P, h, fg);
  return [a = std::move(a), b = std::move(b), c = std::move(c)](const VectorXd& p) {
    return a(p) + b(p) + c(p);
  };
}

VectorFn num_deformed_bracket(MatrixFn N, VectorFn X, VectorFn Y) {
  VectorFn NX = [N, X](const VectorXd& p) { return VectorXd(N(p) * X(p)); };
  VectorFn NY = [N, Y](const VectorXd& p) { return VectorXd(N(p) * Y(p)); };
  VectorFn t1 = num_lie_bracket(NX, Y);
  VectorFn t2 = num_lie_bracket(X, NY);
  VectorFn t3 = num_lie_bracket(X, Y);
  return [N = std::move(N), t1 = std::move(t1), t2 = std::move(t2), t3 = std::move(t3)](const VectorXd& p) {
    return VectorXd(t1(p) + t2(p) - N(p) * t3(p));
  };
}

VectorFn num_torsion_pair(MatrixFn N, int i, int j, int dim) {
  VectorFn ci = [N, i](const VectorXd& p) { return VectorXd(N(p).col(i)); };
  VectorFn cj = [N, j](const VectorXd& p) { return VectorXd(N(p).col(j)); };
  VectorFn ei = [i, dim](const VectorXd&) { return VectorXd(VectorXd::Unit(dim, i)); };
  VectorFn ej = [j, dim](const VectorXd&) { return VectorXd(VectorXd::Unit(dim, j)); };
  VectorFn t1 = num_lie_bracket(ci, cj);
  VectorFn t2 = num_lie_bracket(ci, ej);
  VectorFn t3 = num_lie_bracket(ei, cj);
  return [N = std::move(N), t1 = std::move(t1), t2 = std::move(t2), t3 = std::move(t3)](const VectorXd& p) {
    return VectorXd(t1(p) - N(p) * (t2(p) + t3(p)));
  };
}

ScalarFn num_schouten_component(MatrixFn P, int i, int j, int k, int dim) {
  return [P = std::move(P), i, j, k, dim](const VectorXd& p) {
    auto entry = [&P](int a, int b) {
      return ScalarFn([&P, a, b](const VectorXd& q) { return P(q)(a, b); });
    };
    double acc = 0.0;
    for (int l = 0; l < dim; ++l) {
      MatrixXd Pp = P(p);
      acc += Pp(i, l) * partial_diff(entry(j, k), p, l);
      acc += Pp(j, l) * partial_diff(entry(k, i), p, l);
      acc += Pp(k, l) * partial_diff(entry(i, j), p, l);
    }
    return 2.0 * acc;
  };
}

double max_relative_deviation(const OracleCase& c, int trials, std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    std::vector<Rational> pt;
    pt.reserve(static_cast<std::size_t>(c.dim));
    for (int i = 0; i < c.dim; ++i) pt.push_back(rng.rational_in_unit(64));
    std::vector<Rational> exact = c.exact(pt);

    VectorXd dp(c.dim);
    for (int i = 0; i < c.dim; ++i) dp[i] = pt[static_cast<std::size_t>(i)].to_double();
    VectorXd approx = c.approx(dp);

    for (std::size_t k = 0; k < exact.size(); ++k) {
      double e = exact[k].to_double();
      double a = approx[static_cast<Eigen::Index>(k)];
      double dev = std::fabs(e - a) / std::max({1.0, std::fabs(e), std::fabs(a)});
      worst = std::max(worst, dev);
    }
  }
  return worst;
}

namespace {

// Instance data stays low-degree with small coefficients so that the
// truncation error of the h^2 difference scheme sits far below tolerance.
Poly gen_poly(Rng& rng, const ChartPtr& sp) { return random_poly(rng, sp, 2, 3, 2); }

VectorField gen_vector(Rng& rng, const ChartPtr& sp) {
  VectorField X(sp);
  for (int i = 0; i < sp->dim(); ++i) X.set_component(i, gen_poly(rng, sp));
  return X;
}

OneForm gen_form(Rng& rng, const ChartPtr& sp) {
  OneForm a(sp);
  for (int i = 0; i < sp->dim(); ++i) a.set_component(i, gen_poly(rng, sp));
  return a;
}

Bivector gen_bivector(Rng& rng, const ChartPtr& sp) {
  Bivector P(sp);
  for (int i = 0; i < sp->dim(); ++i) {
    for (int j = i + 1; j < sp->dim(); ++j) P.set_component(i, j, gen_poly(rng, sp));
  }
  return P;
}

EndoField gen_endo(Rng& rng, const ChartPtr& sp) {
  EndoField N(sp);
  for (int i = 0; i < sp->dim(); ++i) {
    for (int j = 0; j < sp->dim(); ++j) N.set_entry(i, j, gen_poly(rng, sp));
  }
  return N;
}

std::function<std::vector<Rational>(const std::vector<Rational>&)> exact_vector(const VectorField& X) {
  return [X](const std::vector<Rational>& pt) {
    std::vector<Rational> out;
    for (int i = 0; i < X.dim(); ++i) out.push_back(X.component(i).eval(pt));
    return out;
  };
}

std::function<std::vector<Rational>(const std::vector<Rational>&)> exact_form(const OneForm& a) {
  return [a](const std::vector<Rational>& pt) {
    std::vector<Rational> out;
    for (int i = 0; i < a.dim(); ++i) out.push_back(a.component(i).eval(pt));
    return out;
  };
}

std::function<std::vector<Rational>(const std::vector<Rational>&)> exact_scalar(const Poly& f) {
  return [f](const std::vector<Rational>& pt) { return std::vector<Rational>{f.eval(pt)}; };
}

}  // namespace

std::vector<OracleCase> oracle_battery(const ChartPtr& space, std::uint64_t seed) {
  Rng rng(seed);
  int n = space->dim();
  std::vector<OracleCase> cases;

  VectorField X = gen_vector(rng, space), Y = gen_vector(rng, space);
  OneForm a = gen_form(rng, space), b = gen_form(rng, space);
  Bivector P = gen_bivector(rng, space);
  EndoField N = gen_endo(rng, space);
  Poly f = gen_poly(rng, space), g = gen_poly(rng, space), h = gen_poly(rng, space);

  cases.push_back({"lie_bracket", n, exact_vector(lie_bracket(X, Y)),
                   num_lie_bracket(lift(X), lift(Y))});

  cases.push_back({"sharp", n, exact_vector(sharp(P, a)), num_sharp(lift(P), lift(a))});

  cases.push_back({"endo_dual", n, exact_form(endo_dual(N, a)), num_endo_dual(lift(N), lift(a))});

  {
    // The matrix of N o P#: exact entries vs value-level numeric product.
    EndoField NPm(space);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        Poly acc(space);
        for (int l = 0; l < n; ++l) acc += N.entry(i, l) * P.component(j, l);
        NPm.set_entry(i, j, acc);
      }
    }
    std::vector<Poly> flat;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) flat.push_back(NPm.entry(i, j));
    }
    auto Pf = lift(P);
    auto Nf = lift(N);
    cases.push_back(
        {"endo_compose_bivector", n,
         [flat](const std::vector<Rational>& pt) {
           std::vector<Rational> out;
           for (const auto& p : flat) out.push_back(p.eval(pt));
           return out;
         },
         [Pf, Nf, n](const VectorXd& p) {
           MatrixXd A = Nf(p) * Pf(p).transpose();
           VectorXd out(n * n);
           for (int i = 0; i < n; ++i) {
             for (int j = 0; j < n; ++j) out[i * n + j] = A(i, j);
           }
           return out;
         }});
  }

  cases.push_back({"d_function", n, exact_form(d_function(f)), num_d(lift(f))});

  cases.push_back({"lie_derivative_oneform", n, exact_form(lie_derivative_oneform(X, b)),
                   num_lie_derivative_oneform(lift(X), lift(b))});

  cases.push_back({"form_bracket", n, exact_form(form_bracket(P, a, b)),
                   num_form_bracket(lift(P), lift(a), lift(b))});

  cases.push_back({"deformed_bracket", n, exact_vector(deformed_bracket(N, X, Y)),
                   num_deformed_bracket(lift(N), lift(X), lift(Y))});

  cases.push_back({"jacobiator", n, exact_scalar(jacobiator(P, f, g, h)),
                   [jfn = num_jacobiator(lift(P), lift(f), lift(g), lift(h))](const VectorXd& p) {
                     VectorXd out(1);
                     out[0] = jfn(p);
                     return out;
                   }});

  {
    Trivector S = schouten_square(P);
    std::vector<Poly> flat;
    std::vector<ScalarFn> approx;
    auto Pf = lift(P);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        for (int k = j + 1; k < n; ++k) {
          flat.push_back(S.component(i, j, k));
          approx.push_back(num_schouten_component(Pf, i, j, k, n));
        }
      }
    }
    cases.push_back({"schouten_square", n,
                     [flat](const std::vector<Rational>& pt) {
                       std::vector<Rational> out;
                       for (const auto& p : flat) out.push_back(p.eval(pt));
                       return out;
                     },
                     [approx](const VectorXd& p) {
                       VectorXd out(static_cast<Eigen::Index>(approx.size()));
                       for (std::size_t k = 0; k < approx.size(); ++k) {
                         out[static_cast<Eigen::Index>(k)] = approx[k](p);
                       }
                       return out;
                     }});
  }

  {
    Torsion tau = nijenhuis_torsion(N);
    std::vector<Poly> flat;
    std::vector<VectorFn> approx;
    auto Nf = lift(N);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        VectorField t = tau.component(i, j);
        for (int c = 0; c < n; ++c) flat.push_back(t.component(c));
        approx.push_back(num_torsion_pair(Nf, i, j, n));
      }
    }
    cases.push_back({"nijenhuis_torsion", n,
                     [flat](const std::vector<Rational>& pt) {
                       std::vector<Rational> out;
                       for (const auto& p : flat) out.push_back(p.eval(pt));
                       return out;
                     },
                     [approx, n](const VectorXd& p) {
                       VectorXd out(static_cast<Eigen::Index>(approx.size()) * n);
                       Eigen::Index at = 0;
                       for (const auto& fn : approx) {
                         VectorXd v = fn(p);
                         for (int c = 0; c < n; ++c) out[at++] = v[c];
                       }
                       return out;
                     }});
  }

  {
    // A sharp-compatible endomorphism: a polynomial multiple of the
    // identity. Keeps the concomitant defined for random P.
    EndoField M(space);
    Poly s = gen_poly(rng, space);
    for (int i = 0; i < n; ++i) M.set_entry(i, i, s);
    cases.push_back({"magri_morosi", n, exact_form(magri_morosi(P, M, a, b)),
                     num_magri_morosi(lift(P), lift(M), lift(a), lift(b))});
  }

  return cases;
}

}  // namespace pn::oracle
