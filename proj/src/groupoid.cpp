#include "pn/groupoid.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "pn/error.hpp"

namespace pn {

namespace {

std::vector<std::string> derive_y_names(const std::vector<std::string>& base) {
  bool all_x = std::all_of(base.begin(), base.end(),
                           [](const std::string& s) { return !s.empty() && s[0] == 'x'; });
  std::set<std::string> base_set(base.begin(), base.end());
  if (all_x) {
    std::vector<std::string> cand;
    cand.reserve(base.size());
    for (const auto& s : base) cand.push_back("y" + s.substr(1));
    std::set<std::string> cand_set(cand.begin(), cand.end());
    bool fresh = cand_set.size() == cand.size() &&
                 std::none_of(cand.begin(), cand.end(),
                              [&base_set](const std::string& s) { return base_set.count(s) > 0; });
    if (fresh) return cand;
  }
  std::string prefix = "y_";
  while (true) {
    std::vector<std::string> cand;
    cand.reserve(base.size());
    for (const auto& s : base) cand.push_back(prefix + s);
    if (std::none_of(cand.begin(), cand.end(),
                     [&base_set](const std::string& s) { return base_set.count(s) > 0; })) {
      return cand;
    }
    prefix = "y_" + prefix;
  }
}

void require_on(const ChartPtr& have, const ChartPtr& want, const char* what) {
  if (!same_chart(have, want)) throw ChartMismatchError(std::string(what));
}

// A working chart of fresh symbols arranged in labeled blocks of the base
// dimension; block "a" over base (x1, x2) contributes symbols a_x1, a_x2.
struct FormalChart {
  ChartPtr chart;
  int n = 0;
  std::map<std::string, int> offsets;

  int offset(const std::string& label) const { return offsets.at(label); }

  FormalPoint block(const std::string& label) const {
    FormalPoint p;
    p.reserve(static_cast<std::size_t>(n));
    int off = offset(label);
    for (int i = 0; i < n; ++i) p.push_back(Poly::coordinate(chart, off + i));
    return p;
  }

  std::vector<int> block_indices(const std::string& label) const {
    std::vector<int> idx;
    int off = offset(label);
    for (int i = 0; i < n; ++i) idx.push_back(off + i);
    return idx;
  }
};

FormalChart make_formal_chart(const ChartPtr& base, const std::vector<std::string>& labels) {
  FormalChart F;
  F.n = base->dim();
  std::vector<std::string> names;
  int off = 0;
  for (const auto& label : labels) {
    F.offsets[label] = off;
    for (const auto& coord : base->names()) names.push_back(label + "_" + coord);
    off += F.n;
  }
  F.chart = ChartSpace::create(std::move(names));
  return F;
}

// Base polynomial as a function of the block `label`.
Poly inject_base(const FormalChart& F, const Poly& p, const std::string& label) {
  std::vector<int> var_map(static_cast<std::size_t>(F.n));
  int off = F.offset(label);
  for (int i = 0; i < F.n; ++i) var_map[static_cast<std::size_t>(i)] = off + i;
  return p.reindex(F.chart, var_map);
}

// Total-chart polynomial evaluated at the formal pair (block lx, block ly).
Poly inject_total(const FormalChart& F, int n, const Poly& p, const std::string& lx,
                  const std::string& ly) {
  std::vector<int> var_map(static_cast<std::size_t>(2 * n));
  int ox = F.offset(lx), oy = F.offset(ly);
  for (int i = 0; i < n; ++i) {
    var_map[static_cast<std::size_t>(i)] = ox + i;
    var_map[static_cast<std::size_t>(n + i)] = oy + i;
  }
  return p.reindex(F.chart, var_map);
}

std::string component_mismatch(const std::string& what, int i, const Poly& got, const Poly& want) {
  std::ostringstream os;
  os << what << "[" << i + 1 << "]: " << got.str() << " != " << want.str();
  return os.str();
}

// First differing component, or "" when equal.
std::string diff_witness(const std::string& what, const FormalPoint& got, const FormalPoint& want) {
  for (std::size_t i = 0; i < got.size(); ++i) {
    if (got[i] != want[i]) {
      return component_mismatch(what, static_cast<int>(i), got[i], want[i]);
    }
  }
  return "";
}

}  // namespace

// ----------------------------------------------------------------------- //
// PairGroupoid
// ----------------------------------------------------------------------- //

PairGroupoid PairGroupoid::over(ChartPtr base) {
  std::vector<std::string> names = base->names();
  std::vector<std::string> ys = derive_y_names(names);
  names.insert(names.end(), ys.begin(), ys.end());
  ChartPtr total = ChartSpace::create(std::move(names));
  return PairGroupoid(std::move(base), std::move(total));
}

Poly PairGroupoid::lift_x(const Poly& base_poly) const {
  require_on(base_poly.space(), base_, "lift_x: polynomial not on the base chart");
  std::vector<int> var_map(static_cast<std::size_t>(n()));
  for (int i = 0; i < n(); ++i) var_map[static_cast<std::size_t>(i)] = i;
  return base_poly.reindex(total_, var_map);
}

Poly PairGroupoid::lift_y(const Poly& base_poly) const {
  require_on(base_poly.space(), base_, "lift_y: polynomial not on the base chart");
  std::vector<int> var_map(static_cast<std::size_t>(n()));
  for (int i = 0; i < n(); ++i) var_map[static_cast<std::size_t>(i)] = n() + i;
  return base_poly.reindex(total_, var_map);
}

Poly PairGroupoid::swap_blocks(const Poly& total_poly) const {
  require_on(total_poly.space(), total_, "swap_blocks: polynomial not on the total chart");
  std::vector<int> var_map(static_cast<std::size_t>(2 * n()));
  for (int i = 0; i < n(); ++i) {
    var_map[static_cast<std::size_t>(i)] = n() + i;
    var_map[static_cast<std::size_t>(n() + i)] = i;
  }
  return total_poly.reindex(total_, var_map);
}

Poly PairGroupoid::at_units(const Poly& total_poly) const {
  require_on(total_poly.space(), total_, "at_units: polynomial not on the total chart");
  std::vector<int> var_map(static_cast<std::size_t>(2 * n()));
  for (int i = 0; i < n(); ++i) {
    var_map[static_cast<std::size_t>(i)] = i;
    var_map[static_cast<std::size_t>(n() + i)] = i;
  }
  return total_poly.reindex(base_, var_map);
}

// ----------------------------------------------------------------------- //
// Structural maps on formal elements
// ----------------------------------------------------------------------- //

bool formal_equal(const FormalPoint& a, const FormalPoint& b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin());
}

FormalPoint formal_negate(const FormalPoint& a) {
  FormalPoint r;
  r.reserve(a.size());
  for (const auto& p : a) r.push_back(-p);
  return r;
}

FormalPoint source(const Arrow& g) { return g.y; }
FormalPoint target(const Arrow& g) { return g.x; }
Arrow unit_arrow(const FormalPoint& p) { return {p, p}; }
Arrow inverse(const Arrow& g) { return {g.y, g.x}; }

Arrow multiply(const Arrow& g, const Arrow& h) {
  if (!formal_equal(g.y, h.x)) {
    throw NonComposableError("multiply: source of the first arrow differs from target of the second");
  }
  return {g.x, h.y};
}

PointedVector tangent_source(const TangentElement& V) { return {V.at.y, V.w}; }
PointedVector tangent_target(const TangentElement& V) { return {V.at.x, V.v}; }
TangentElement tangent_unit(const PointedVector& pv) { return {{pv.at, pv.at}, pv.vec, pv.vec}; }
TangentElement tangent_inverse(const TangentElement& V) { return {{V.at.y, V.at.x}, V.w, V.v}; }

TangentElement tangent_multiply(const TangentElement& V, const TangentElement& W) {
  if (!formal_equal(V.at.y, W.at.x) || !formal_equal(V.w, W.v)) {
    throw NonComposableError("tangent_multiply: Ts of the first element differs from Tt of the second");
  }
  return {{V.at.x, W.at.y}, V.v, W.w};
}

PointedCovector cotangent_source(const CotangentElement& C) { return {C.at.y, formal_negate(C.eta)}; }
PointedCovector cotangent_target(const CotangentElement& C) { return {C.at.x, C.xi}; }

CotangentElement cotangent_unit(const PointedCovector& pc) {
  return {{pc.at, pc.at}, pc.cov, formal_negate(pc.cov)};
}

CotangentElement cotangent_inverse(const CotangentElement& C) {
  return {{C.at.y, C.at.x}, formal_negate(C.eta), formal_negate(C.xi)};
}

CotangentElement cotangent_multiply(const CotangentElement& C1, const CotangentElement& C2) {
  if (!formal_equal(C1.at.y, C2.at.x) || !formal_equal(formal_negate(C1.eta), C2.xi)) {
    throw NonComposableError("cotangent_multiply: s~ of the first element differs from t~ of the second");
  }
  return {{C1.at.x, C2.at.y}, C1.xi, C2.eta};
}

// ----------------------------------------------------------------------- //
// Axiom suite
// ----------------------------------------------------------------------- //

CheckReport groupoid_axioms_report(const PairGroupoid& G) {
  CheckReport report;
  const auto& base = G.base();

  auto add = [&report](const std::string& id, const std::string& witness) {
    if (witness.empty()) {
      report.add(id, Verdict::Pass);
    } else {
      report.add(id, Verdict::Fail, witness);
    }
  };

  {  // Base pair groupoid over four formal points.
    FormalChart F = make_formal_chart(base, {"a", "b", "c", "d"});
    FormalPoint A = F.block("a"), B = F.block("b"), C = F.block("c"), D = F.block("d");
    Arrow g{A, B}, h{B, C}, k{C, D};

    std::string w;
    Arrow gh = multiply(g, h);
    w = diff_witness("s(gh) vs s(h)", source(gh), source(h));
    if (w.empty()) w = diff_witness("t(gh) vs t(g)", target(gh), target(g));
    add("base.compat_source_target", w);

    Arrow lhs = multiply(multiply(g, h), k);
    Arrow rhs = multiply(g, multiply(h, k));
    w = diff_witness("(gh)k vs g(hk), target", lhs.x, rhs.x);
    if (w.empty()) w = diff_witness("(gh)k vs g(hk), source", lhs.y, rhs.y);
    add("base.associative", w);

    Arrow ug = multiply(unit_arrow(target(g)), g);
    Arrow gu = multiply(g, unit_arrow(source(g)));
    w = ug == g ? "" : "1_{t(g)} g != g";
    if (w.empty() && !(gu == g)) w = "g 1_{s(g)} != g";
    add("base.units", w);

    w = multiply(g, inverse(g)) == unit_arrow(target(g)) ? "" : "g g^-1 != 1_{t(g)}";
    if (w.empty() && !(multiply(inverse(g), g) == unit_arrow(source(g)))) w = "g^-1 g != 1_{s(g)}";
    add("base.inverses", w);
  }

  {  // Tangent groupoid with formal vectors chosen composable.
    FormalChart F = make_formal_chart(base, {"a", "b", "c", "d", "va", "vb", "vc", "vd"});
    FormalPoint A = F.block("a"), B = F.block("b"), C = F.block("c"), D = F.block("d");
    FormalPoint VA = F.block("va"), VB = F.block("vb"), VC = F.block("vc"), VD = F.block("vd");
    TangentElement V1{{A, B}, VA, VB}, V2{{B, C}, VB, VC}, V3{{C, D}, VC, VD};

    std::string w;
    TangentElement V12 = tangent_multiply(V1, V2);
    PointedVector s12 = tangent_source(V12), s2 = tangent_source(V2);
    w = s12 == s2 ? "" : diff_witness("Ts(Tm) vs Ts", s12.vec, s2.vec);
    if (w.empty()) {
      PointedVector t12 = tangent_target(V12), t1 = tangent_target(V1);
      if (!(t12 == t1)) w = diff_witness("Tt(Tm) vs Tt", t12.vec, t1.vec);
    }
    add("tangent.compat_source_target", w);

    w = tangent_multiply(tangent_multiply(V1, V2), V3) == tangent_multiply(V1, tangent_multiply(V2, V3))
            ? ""
            : "tangent multiplication is not associative";
    add("tangent.associative", w);

    w = tangent_multiply(tangent_unit(tangent_target(V1)), V1) == V1 ? "" : "Tu(Tt(V)) V != V";
    if (w.empty() && !(tangent_multiply(V1, tangent_unit(tangent_source(V1))) == V1)) {
      w = "V Tu(Ts(V)) != V";
    }
    add("tangent.units", w);

    w = tangent_multiply(V1, tangent_inverse(V1)) == tangent_unit(tangent_target(V1))
            ? ""
            : "V Ti(V) != Tu(Tt(V))";
    if (w.empty() &&
        !(tangent_multiply(tangent_inverse(V1), V1) == tangent_unit(tangent_source(V1)))) {
      w = "Ti(V) V != Tu(Ts(V))";
    }
    add("tangent.inverses", w);
  }

  {  // Cotangent groupoid; composability fixes the middle covectors.
    FormalChart F = make_formal_chart(base, {"a", "b", "c", "d", "xi", "eta1", "eta2", "eta3"});
    FormalPoint A = F.block("a"), B = F.block("b"), C = F.block("c"), D = F.block("d");
    FormalPoint XI = F.block("xi");
    FormalPoint E1 = F.block("eta1"), E2 = F.block("eta2"), E3 = F.block("eta3");
    CotangentElement C1{{A, B}, XI, E1};
    CotangentElement C2{{B, C}, formal_negate(E1), E2};
    CotangentElement C3{{C, D}, formal_negate(E2), E3};

    std::string w;
    CotangentElement C12 = cotangent_multiply(C1, C2);
    PointedCovector s12 = cotangent_source(C12), s2 = cotangent_source(C2);
    w = s12 == s2 ? "" : diff_witness("s~(m~) vs s~", s12.cov, s2.cov);
    if (w.empty()) {
      PointedCovector t12 = cotangent_target(C12), t1 = cotangent_target(C1);
      if (!(t12 == t1)) w = diff_witness("t~(m~) vs t~", t12.cov, t1.cov);
    }
    add("cotangent.compat_source_target", w);

    w = cotangent_multiply(cotangent_multiply(C1, C2), C3) ==
                cotangent_multiply(C1, cotangent_multiply(C2, C3))
            ? ""
            : "cotangent multiplication is not associative";
    add("cotangent.associative", w);

    w = cotangent_multiply(cotangent_unit(cotangent_target(C1)), C1) == C1 ? ""
                                                                           : "u~(t~(C)) C != C";
    if (w.empty() && !(cotangent_multiply(C1, cotangent_unit(cotangent_source(C1))) == C1)) {
      w = "C u~(s~(C)) != C";
    }
    add("cotangent.units", w);

    w = cotangent_multiply(C1, cotangent_inverse(C1)) == cotangent_unit(cotangent_target(C1))
            ? ""
            : "C i~(C) != u~(t~(C))";
    if (w.empty() && !(cotangent_multiply(cotangent_inverse(C1), C1) ==
                       cotangent_unit(cotangent_source(C1)))) {
      w = "i~(C) C != u~(s~(C))";
    }
    add("cotangent.inverses", w);
  }

  return report;
}

// ----------------------------------------------------------------------- //
// Extension, restriction, invariance
// ----------------------------------------------------------------------- //

const char* convention_name(Convention c) { return c == Convention::Right ? "right" : "left"; }

VectorField extend_vector(const PairGroupoid& G, const VectorField& X, Convention conv) {
  require_on(X.space(), G.base(), "extend_vector: field not on the base chart");
  VectorField right(G.total());
  for (int i = 0; i < G.n(); ++i) right.set_component(i, G.lift_x(X.component(i)));
  return conv == Convention::Right ? right : inversion_pushforward(G, right);
}

VectorField inversion_pushforward(const PairGroupoid& G, const VectorField& V) {
  require_on(V.space(), G.total(), "inversion_pushforward: field not on the total chart");
  VectorField W(G.total());
  for (int i = 0; i < G.n(); ++i) {
    W.set_component(i, G.swap_blocks(V.component(G.n() + i)));
    W.set_component(G.n() + i, G.swap_blocks(V.component(i)));
  }
  return W;
}

Bivector extend_bivector(const PairGroupoid& G, const Bivector& L, Convention conv) {
  require_on(L.space(), G.base(), "extend_bivector: bivector not on the base chart");
  Bivector right(G.total());
  for (int i = 0; i < G.n(); ++i) {
    for (int j = i + 1; j < G.n(); ++j) right.set_component(i, j, G.lift_x(L.component(i, j)));
  }
  return conv == Convention::Right ? right : inversion_pushforward(G, right);
}

Bivector inversion_pushforward(const PairGroupoid& G, const Bivector& P) {
  require_on(P.space(), G.total(), "inversion_pushforward: bivector not on the total chart");
  int m = 2 * G.n();
  auto swapped = [&G, m](int a) { return (a + G.n()) % m; };
  Bivector Q(G.total());
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      Q.set_component(a, b, G.swap_blocks(P.component(swapped(a), swapped(b))));
    }
  }
  return Q;
}

EndoField extend_endo(const PairGroupoid& G, const EndoField& n, Convention conv) {
  require_on(n.space(), G.base(), "extend_endo: endomorphism not on the base chart");
  EndoField N(G.total());
  for (int i = 0; i < G.n(); ++i) {
    for (int j = 0; j < G.n(); ++j) {
      N.set_entry(i, j, G.lift_x(n.entry(i, j)));
      N.set_entry(G.n() + i, G.n() + j, G.lift_y(n.entry(i, j)));
    }
  }
  // The block-diagonal profile is inversion-invariant, so the left
  // extension coincides with the right one.
  return conv == Convention::Right ? N : inversion_pushforward(G, N);
}

EndoField inversion_pushforward(const PairGroupoid& G, const EndoField& N) {
  require_on(N.space(), G.total(), "inversion_pushforward: endomorphism not on the total chart");
  int m = 2 * G.n();
  auto swapped = [&G, m](int a) { return (a + G.n()) % m; };
  EndoField M(G.total());
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      M.set_entry(a, b, G.swap_blocks(N.entry(swapped(a), swapped(b))));
    }
  }
  return M;
}

Trivector extend_trivector(const PairGroupoid& G, const Trivector& T, Convention conv) {
  require_on(T.space(), G.base(), "extend_trivector: trivector not on the base chart");
  Trivector right(G.total());
  for (int i = 0; i < G.n(); ++i) {
    for (int j = i + 1; j < G.n(); ++j) {
      for (int k = j + 1; k < G.n(); ++k) {
        right.set_component(i, j, k, G.lift_x(T.component(i, j, k)));
      }
    }
  }
  if (conv == Convention::Right) return right;
  int m = 2 * G.n();
  auto swapped = [&G, m](int a) { return (a + G.n()) % m; };
  Trivector Q(G.total());
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      for (int c = b + 1; c < m; ++c) {
        Q.set_component(a, b, c, G.swap_blocks(right.component(swapped(a), swapped(b), swapped(c))));
      }
    }
  }
  return Q;
}

namespace {

std::string biv_component_name(const PairGroupoid& G, int a, int b) {
  return "P^(" + G.total()->name(a) + "," + G.total()->name(b) + ")";
}

}  // namespace

Bivector restrict_bivector(const PairGroupoid& G, const Bivector& P, Convention conv) {
  require_on(P.space(), G.total(), "restrict_bivector: bivector not on the total chart");
  int n = G.n();
  // The convention's own block carries the restriction; everything else
  // must vanish at the units or the bivector is not vertical there.
  for (int a = 0; a < 2 * n; ++a) {
    for (int b = a + 1; b < 2 * n; ++b) {
      bool keep = conv == Convention::Right ? (a < n && b < n) : (a >= n && b >= n);
      if (keep) continue;
      Poly res = G.at_units(P.component(a, b));
      if (!res.is_zero()) {
        std::string vertical = conv == Convention::Right ? "source" : "target";
        throw RestrictionError(
            "restrict_bivector: bivector is not " + vertical + "-vertical at the units",
            biv_component_name(G, a, b) + " at units = " + res.str());
      }
    }
  }
  Bivector L(G.base());
  int off = conv == Convention::Right ? 0 : n;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      L.set_component(i, j, G.at_units(P.component(off + i, off + j)));
    }
  }
  return L;
}

EndoField restrict_endo(const PairGroupoid& G, const EndoField& N, Convention conv) {
  require_on(N.space(), G.total(), "restrict_endo: endomorphism not on the total chart");
  int off = conv == Convention::Right ? 0 : G.n();
  EndoField r(G.base());
  for (int i = 0; i < G.n(); ++i) {
    for (int j = 0; j < G.n(); ++j) r.set_entry(i, j, G.at_units(N.entry(off + i, off + j)));
  }
  return r;
}

InvarianceResult is_invariant(const PairGroupoid& G, const Bivector& P, Convention conv) {
  require_on(P.space(), G.total(), "is_invariant: bivector not on the total chart");
  int n = G.n();
  std::vector<int> other_block;
  for (int i = 0; i < n; ++i) other_block.push_back(conv == Convention::Right ? n + i : i);

  for (int a = 0; a < 2 * n; ++a) {
    for (int b = a + 1; b < 2 * n; ++b) {
      bool own = conv == Convention::Right ? (a < n && b < n) : (a >= n && b >= n);
      const Poly comp = P.component(a, b);
      if (!own) {
        if (!comp.is_zero()) {
          return {false, biv_component_name(G, a, b) + " = " + comp.str() + " must vanish"};
        }
        continue;
      }
      Poly res = comp.terms_depending_on(other_block);
      if (!res.is_zero()) {
        return {false, biv_component_name(G, a, b) + " carries opposite-block terms " + res.str()};
      }
    }
  }
  return {true, ""};
}

InvarianceResult is_invariant(const PairGroupoid& G, const EndoField& N, Convention conv) {
  require_on(N.space(), G.total(), "is_invariant: endomorphism not on the total chart");
  EndoField profile = extend_endo(G, restrict_endo(G, N, conv), conv);
  for (int a = 0; a < 2 * G.n(); ++a) {
    for (int b = 0; b < 2 * G.n(); ++b) {
      if (N.entry(a, b) != profile.entry(a, b)) {
        return {false, "N^(" + G.total()->name(a) + ")_(" + G.total()->name(b) + ") = " +
                           N.entry(a, b).str() + " but the invariant profile needs " +
                           profile.entry(a, b).str()};
      }
    }
  }
  return {true, ""};
}

// ----------------------------------------------------------------------- //
// Multiplicativity
// ----------------------------------------------------------------------- //

MorphismCheck check_bivector_multiplicative(const PairGroupoid& G, const Bivector& P) {
  require_on(P.space(), G.total(), "check_bivector_multiplicative: bivector not on the total chart");
  int n = G.n();
  const auto& base = G.base();
  FormalChart F = make_formal_chart(base, {"a", "b", "c", "xi", "eta", "zt"});

  FormalPoint XI = F.block("xi"), ETA = F.block("eta"), ZT = F.block("zt");

  // Sharp of P at the formal pair (lx, ly) applied to the covector
  // (alpha, beta): V^A = sum_B P^{BA} c_B, split into x and y parts.
  auto sharp_at = [&](const std::string& lx, const std::string& ly, const FormalPoint& alpha,
                      const FormalPoint& beta) {
    std::pair<FormalPoint, FormalPoint> out{
        FormalPoint(static_cast<std::size_t>(n), Poly::zero(F.chart)),
        FormalPoint(static_cast<std::size_t>(n), Poly::zero(F.chart))};
    for (int A = 0; A < 2 * n; ++A) {
      Poly acc(F.chart);
      for (int B = 0; B < 2 * n; ++B) {
        Poly entry = P.component(B, A);
        if (entry.is_zero()) continue;
        const Poly& c = B < n ? alpha[static_cast<std::size_t>(B)] : beta[static_cast<std::size_t>(B - n)];
        acc += inject_total(F, n, entry, lx, ly) * c;
      }
      if (A < n) {
        out.first[static_cast<std::size_t>(A)] = std::move(acc);
      } else {
        out.second[static_cast<std::size_t>(A - n)] = std::move(acc);
      }
    }
    return out;
  };

  auto [v1, w1] = sharp_at("a", "b", XI, ETA);
  auto [v2, w2] = sharp_at("b", "c", formal_negate(ETA), ZT);
  auto [v12, w12] = sharp_at("a", "c", XI, ZT);

  // (a) Tt.P# may depend only on (x, xi); Ts.P# only on (y, eta).
  std::vector<int> source_side = F.block_indices("b");
  for (int i : F.block_indices("eta")) source_side.push_back(i);
  std::vector<int> target_side = F.block_indices("a");
  for (int i : F.block_indices("xi")) target_side.push_back(i);

  for (int i = 0; i < n; ++i) {
    Poly res = v1[static_cast<std::size_t>(i)].terms_depending_on(source_side);
    if (!res.is_zero()) {
      return {false, "base_map_factorization",
              "Tt(P# C)[" + base->name(i) + "] does not factor through t~: " + res.str()};
    }
    res = w1[static_cast<std::size_t>(i)].terms_depending_on(target_side);
    if (!res.is_zero()) {
      return {false, "base_map_factorization",
              "Ts(P# C)[" + base->name(i) + "] does not factor through s~: " + res.str()};
    }
  }

  // (b) Composable covectors map to composable vectors.
  for (int i = 0; i < n; ++i) {
    Poly res = w1[static_cast<std::size_t>(i)] - v2[static_cast<std::size_t>(i)];
    if (!res.is_zero()) {
      return {false, "composability_preserved",
              "Ts(P# C1) - Tt(P# C2) [" + base->name(i) + "] = " + res.str()};
    }
  }

  // (c) P#(m~(C1, C2)) = Tm(P# C1, P# C2) on the composable locus.
  for (int i = 0; i < n; ++i) {
    Poly res = v12[static_cast<std::size_t>(i)] - v1[static_cast<std::size_t>(i)];
    if (!res.is_zero()) {
      return {false, "multiplicative",
              "target block of P#(m~) - Tm(P# C1, P# C2) [" + base->name(i) + "] = " + res.str()};
    }
    res = w12[static_cast<std::size_t>(i)] - w2[static_cast<std::size_t>(i)];
    if (!res.is_zero()) {
      return {false, "multiplicative",
              "source block of P#(m~) - Tm(P# C1, P# C2) [" + base->name(i) + "] = " + res.str()};
    }
  }

  return {true, "", ""};
}

MorphismCheck check_endo_multiplicative(const PairGroupoid& G, const EndoField& N,
                                        const EndoField& n_base) {
  require_on(N.space(), G.total(), "check_endo_multiplicative: N not on the total chart");
  require_on(n_base.space(), G.base(), "check_endo_multiplicative: n_M not on the base chart");
  int n = G.n();
  const auto& base = G.base();
  FormalChart F = make_formal_chart(base, {"a", "b", "c", "v", "w", "u"});

  FormalPoint V = F.block("v"), W = F.block("w"), U = F.block("u");

  // N at the formal pair (lx, ly), applied to the tangent vector
  // (vv, ww); returns (x part, y part).
  auto apply_N = [&](const std::string& lx, const std::string& ly, const FormalPoint& vv,
                     const FormalPoint& ww) {
    std::pair<FormalPoint, FormalPoint> out{
        FormalPoint(static_cast<std::size_t>(n), Poly::zero(F.chart)),
        FormalPoint(static_cast<std::size_t>(n), Poly::zero(F.chart))};
    for (int A = 0; A < 2 * n; ++A) {
      Poly acc(F.chart);
      for (int B = 0; B < 2 * n; ++B) {
        const Poly& entry = N.entry(A, B);
        if (entry.is_zero()) continue;
        const Poly& c = B < n ? vv[static_cast<std::size_t>(B)] : ww[static_cast<std::size_t>(B - n)];
        acc += inject_total(F, n, entry, lx, ly) * c;
      }
      if (A < n) {
        out.first[static_cast<std::size_t>(A)] = std::move(acc);
      } else {
        out.second[static_cast<std::size_t>(A - n)] = std::move(acc);
      }
    }
    return out;
  };

  // n_M at formal point l applied to a formal vector.
  auto apply_base = [&](const std::string& l, const FormalPoint& vv) {
    FormalPoint out(static_cast<std::size_t>(n), Poly::zero(F.chart));
    for (int i = 0; i < n; ++i) {
      Poly acc(F.chart);
      for (int j = 0; j < n; ++j) {
        const Poly& entry = n_base.entry(i, j);
        if (entry.is_zero()) continue;
        acc += inject_base(F, entry, l) * vv[static_cast<std::size_t>(j)];
      }
      out[static_cast<std::size_t>(i)] = std::move(acc);
    }
    return out;
  };

  auto [xab, yab] = apply_N("a", "b", V, W);

  FormalPoint nw = apply_base("b", W);
  for (int i = 0; i < n; ++i) {
    Poly res = yab[static_cast<std::size_t>(i)] - nw[static_cast<std::size_t>(i)];
    if (!res.is_zero()) {
      return {false, "source_compat", "Ts(NV) - n_M(Ts V) [" + base->name(i) + "] = " + res.str()};
    }
  }

  FormalPoint nv = apply_base("a", V);
  for (int i = 0; i < n; ++i) {
    Poly res = xab[static_cast<std::size_t>(i)] - nv[static_cast<std::size_t>(i)];
    if (!res.is_zero()) {
      return {false, "target_compat", "Tt(NV) - n_M(Tt V) [" + base->name(i) + "] = " + res.str()};
    }
  }

  {
    auto [xu, yu] = apply_N("a", "a", V, V);
    for (int i = 0; i < n; ++i) {
      Poly res = xu[static_cast<std::size_t>(i)] - nv[static_cast<std::size_t>(i)];
      if (res.is_zero()) res = yu[static_cast<std::size_t>(i)] - nv[static_cast<std::size_t>(i)];
      if (!res.is_zero()) {
        return {false, "unit_compat", "N(Tu v) - Tu(n_M v) [" + base->name(i) + "] = " + res.str()};
      }
    }
  }

  {
    auto [xm, ym] = apply_N("a", "c", V, U);
    auto [xbc, ybc] = apply_N("b", "c", W, U);
    for (int i = 0; i < n; ++i) {
      Poly res = xm[static_cast<std::size_t>(i)] - xab[static_cast<std::size_t>(i)];
      if (!res.is_zero()) {
        return {false, "multiplicative",
                "target block of N(Tm(V,W)) - Tm(NV, NW) [" + base->name(i) + "] = " + res.str()};
      }
      res = ym[static_cast<std::size_t>(i)] - ybc[static_cast<std::size_t>(i)];
      if (!res.is_zero()) {
        return {false, "multiplicative",
                "source block of N(Tm(V,W)) - Tm(NV, NW) [" + base->name(i) + "] = " + res.str()};
      }
    }
  }

  return {true, "", ""};
}

}  // namespace pn
