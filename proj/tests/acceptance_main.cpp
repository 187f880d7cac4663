// Acceptance suite: one criterion per line, exit 0 only if every criterion
// holds within its time budget. Each criterion is exact unless it is the
// numeric-oracle one, whose tolerance is pinned to 1e-6 at step 1e-4.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pn/calculus.hpp"
#include "pn/cli.hpp"
#include "pn/groupoid.hpp"
#include "pn/oracle.hpp"
#include "pn/parse.hpp"
#include "pn/random.hpp"
#include "pn/specfile.hpp"
#include "pn/verifier.hpp"
#include "test_util.hpp"

using namespace pn;

namespace {

struct Criterion {
  int id;
  std::string title;
  double budget_seconds;
  std::function<bool(std::string&)> run;
};

Bivector so3(const ChartPtr& sp) {
  Bivector P(sp);
  P.set_component(0, 1, parse_expr("x3", sp));
  P.set_component(1, 2, parse_expr("x1", sp));
  P.set_component(0, 2, parse_expr("-x2", sp));
  return P;
}

VectorField random_vector(Rng& rng, const ChartPtr& sp, int deg = 2) {
  VectorField X(sp);
  for (int i = 0; i < sp->dim(); ++i) X.set_component(i, random_poly(rng, sp, deg, 3, 3));
  return X;
}

OneForm random_form(Rng& rng, const ChartPtr& sp, int deg = 2) {
  OneForm a(sp);
  for (int i = 0; i < sp->dim(); ++i) a.set_component(i, random_poly(rng, sp, deg, 3, 3));
  return a;
}

Bivector random_bivector(Rng& rng, const ChartPtr& sp, int deg = 2) {
  Bivector P(sp);
  for (int i = 0; i < sp->dim(); ++i) {
    for (int j = i + 1; j < sp->dim(); ++j) P.set_component(i, j, random_poly(rng, sp, deg, 3, 3));
  }
  return P;
}

EndoField random_endo(Rng& rng, const ChartPtr& sp, int deg = 2) {
  EndoField N(sp);
  for (int i = 0; i < sp->dim(); ++i) {
    for (int j = 0; j < sp->dim(); ++j) N.set_entry(i, j, random_poly(rng, sp, deg, 2, 3));
  }
  return N;
}

bool expect(bool cond, const std::string& what, std::string& detail) {
  if (!cond && detail.empty()) detail = what;
  return cond;
}

// -------------------------------------------------------------------------

bool criterion_exact_identities(std::string& detail) {
  auto sp = testutil::r3();
  Rng rng(1001);
  bool ok = true;

  for (int t = 0; t < 50; ++t) {
    VectorField X = random_vector(rng, sp), Y = random_vector(rng, sp);
    ok &= expect(lie_bracket(X, Y) == -lie_bracket(Y, X), "lie bracket antisymmetry", detail);
    Bivector P = random_bivector(rng, sp);
    OneForm a = random_form(rng, sp), b = random_form(rng, sp);
    ok &= expect(form_bracket(P, a, b) == -form_bracket(P, b, a), "form bracket antisymmetry",
                 detail);
  }

  for (int t = 0; t < 25; ++t) {
    VectorField X = random_vector(rng, sp, 2), Y = random_vector(rng, sp, 2),
                Z = random_vector(rng, sp, 2);
    VectorField jac = lie_bracket(X, lie_bracket(Y, Z)) + lie_bracket(Y, lie_bracket(Z, X)) +
                      lie_bracket(Z, lie_bracket(X, Y));
    ok &= expect(jac.is_zero(), "Jacobi identity", detail);
  }

  for (int t = 0; t < 50; ++t) {
    Poly p = random_poly(rng, sp, 4, 5, 4), q = random_poly(rng, sp, 4, 5, 4);
    for (int i = 0; i < 3; ++i) {
      ok &= expect((p * q).partial(i) == p * q.partial(i) + q * p.partial(i), "Leibniz", detail);
      for (int j = i + 1; j < 3; ++j) {
        ok &= expect(p.partial(i).partial(j) == p.partial(j).partial(i), "Clairaut", detail);
      }
    }
  }

  for (int t = 0; t < 10; ++t) {
    EndoField N = random_endo(rng, sp, 2);
    VectorField X = random_vector(rng, sp, 2), Y = random_vector(rng, sp, 2);
    Poly f = random_poly(rng, sp, 2, 3, 3);
    auto torsion_on = [&N](const VectorField& A, const VectorField& B) {
      return lie_bracket(N.apply(A), N.apply(B)) -
             N.apply(lie_bracket(N.apply(A), B) + lie_bracket(A, N.apply(B)) -
                     N.apply(lie_bracket(A, B)));
    };
    ok &= expect(torsion_on(f * X, Y) == f * torsion_on(X, Y), "torsion tensoriality", detail);
  }

  {
    int done = 0;
    while (done < 10) {
      Bivector P = random_bivector(rng, sp, 1);
      EndoField N(sp);
      Poly s = random_poly(rng, sp, 1, 2, 2);
      for (int i = 0; i < 3; ++i) N.set_entry(i, i, s);
      if (!endo_compose_bivector(N, P).ok) continue;
      OneForm a = random_form(rng, sp, 1), b = random_form(rng, sp, 1);
      Poly g = random_poly(rng, sp, 1, 2, 2);
      ok &= expect(magri_morosi(P, N, a, b) == -magri_morosi(P, N, b, a),
                   "concomitant antisymmetry", detail);
      ok &= expect(magri_morosi(P, N, g * a, b) == g * magri_morosi(P, N, a, b),
                   "concomitant function-linearity", detail);
      ++done;
    }
  }

  {
    std::vector<Bivector> poisson;
    poisson.push_back(so3(sp));
    int found = 0;
    while (found < 10) {
      Bivector P(sp);
      for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
          Poly c = Poly::constant(sp, rng.rational(3, 2));
          if (rng.coin()) c += rng.rational(2, 1) * so3(sp).component(i, j);
          P.set_component(i, j, c);
        }
      }
      if (!schouten_square(P).is_zero()) continue;
      poisson.push_back(P);
      ++found;
    }
    for (const auto& P : poisson) {
      Poly f = random_poly(rng, sp, 2, 3, 3), g = random_poly(rng, sp, 2, 3, 3);
      ok &= expect(form_bracket(P, d_function(f), d_function(g)) ==
                       d_function(poisson_bracket(P, f, g)),
                   "form bracket of exact forms", detail);
    }
  }

  return ok;
}

bool criterion_schouten_jacobiator(std::string& detail) {
  auto sp = testutil::r3();
  Rng rng(2002);
  bool ok = true;
  for (int t = 0; t < 25; ++t) {
    Bivector P = random_bivector(rng, sp, 2);
    Poly f = random_poly(rng, sp, 2, 3, 3), g = random_poly(rng, sp, 2, 3, 3),
         h = random_poly(rng, sp, 2, 3, 3);
    Poly lhs = trivector_apply(schouten_square(P), d_function(f), d_function(g), d_function(h));
    ok &= expect(lhs == Rational(2) * jacobiator(P, f, g, h), "schouten vs 2*jacobiator", detail);
  }
  ok &= expect(schouten_square(so3(sp)).is_zero(), "so(3) schouten square", detail);

  Bivector broken(sp);
  broken.set_component(0, 1, parse_expr("1", sp));
  broken.set_component(1, 2, parse_expr("x2", sp));
  Poly jac = jacobiator(broken, Poly::coordinate(sp, 0), Poly::coordinate(sp, 1),
                        Poly::coordinate(sp, 2));
  ok &= expect(jac == Poly::constant(sp, Rational(1)), "perturbed witness jac = 1", detail);
  return ok;
}

bool criterion_numeric_oracle(std::string& detail) {
  bool ok = true;
  for (auto dim : {2, 3}) {
    auto sp = dim == 2 ? testutil::r2() : testutil::r3();
    auto battery = oracle::oracle_battery(sp, 31337);
    for (const auto& c : battery) {
      double dev = oracle::max_relative_deviation(c, 100, 2718);
      if (!(dev < oracle::kTolerance)) {
        char buf[128];
        std::snprintf(buf, sizeof(buf), "%s (dim %d) deviation %.3e", c.name.c_str(), dim, dev);
        ok = expect(false, buf, detail);
      }
      double again = oracle::max_relative_deviation(c, 100, 2718);
      ok &= expect(dev == again, "oracle determinism", detail);
    }
  }
  return ok;
}

bool criterion_groupoid_axioms(std::string& detail) {
  bool ok = true;
  for (int dim = 1; dim <= 3; ++dim) {
    std::vector<std::string> names;
    for (int i = 1; i <= dim; ++i) names.push_back("x" + std::to_string(i));
    PairGroupoid G = PairGroupoid::over(ChartSpace::create(names));
    CheckReport rep = groupoid_axioms_report(G);
    ok &= expect(rep.entries().size() == 12, "twelve axiom entries", detail);
    for (const auto& e : rep.entries()) {
      ok &= expect(e.verdict == Verdict::Pass, "axiom " + e.id + " in dim " + std::to_string(dim),
                   detail);
    }
  }
  return ok;
}

bool criterion_correspondence(std::string& detail) {
  bool ok = true;
  auto corpus = standard_corpus();
  ok &= expect(corpus.size() >= 20, "corpus size", detail);

  for (const auto& data : corpus) {
    CheckReport rep = run_correspondence(data, Convention::Right);
    for (const auto& e : rep.entries()) {
      if (e.id.rfind("match.", 0) == 0) {
        ok &= expect(e.verdict == Verdict::Pass, "verdict matching " + e.id, detail);
      }
      if (e.id.rfind("roundtrip.", 0) == 0) {
        ok &= expect(e.verdict == Verdict::Pass, "round trip " + e.id, detail);
      }
    }

    PairGroupoid G = PairGroupoid::over(data.base());
    EndoField N = extend_endo(G, data.n, Convention::Right);
    if (nijenhuis_torsion(data.n).is_zero()) {
      ok &= expect(check_endo_multiplicative(G, N, data.n).ok,
                   "endo multiplicativity of a torsion-free extension", detail);
    }
  }

  {
    PairGroupoid G = PairGroupoid::over(testutil::r3());
    Rng rng(4004);
    for (int t = 0; t < 10; ++t) {
      VectorField X = random_vector(rng, G.base()), Y = random_vector(rng, G.base());
      ok &= expect(extend_vector(G, lie_bracket(X, Y), Convention::Right) ==
                       lie_bracket(extend_vector(G, X, Convention::Right),
                                   extend_vector(G, Y, Convention::Right)),
                   "extension preserves brackets", detail);
    }
  }
  return ok;
}

bool criterion_known_multiplicative(std::string& detail) {
  bool ok = true;
  {
    PairGroupoid G = PairGroupoid::over(testutil::r3());
    Bivector P = extend_bivector(G, so3(G.base()), Convention::Right) -
                 extend_bivector(G, so3(G.base()), Convention::Left);
    ok &= expect(check_bivector_multiplicative(G, P).ok, "classical so(3) structure", detail);
  }
  {
    PairGroupoid G = PairGroupoid::over(testutil::r2());
    Bivector L(G.base());
    L.set_component(0, 1, parse_expr("1", G.base()));
    Bivector P = extend_bivector(G, L, Convention::Right);
    MorphismCheck check = check_bivector_multiplicative(G, P);
    ok &= expect(!check.ok, "invariant extension must fail", detail);
    ok &= expect(check.condition == "composability_preserved", "documented condition", detail);
    ok &= expect(check.witness.find("eta") != std::string::npos, "documented witness", detail);

    CheckReport rep = run_groupoid_suite(G, P, extend_endo(G, EndoField::identity(G.base()),
                                                           Convention::Right),
                                         EndoField::identity(G.base()));
    bool note_found = false;
    for (const auto& e : rep.entries()) {
      if (e.id == "bivector_multiplicative") {
        note_found = e.verdict == Verdict::Fail && !e.note.empty();
      }
    }
    ok &= expect(note_found, "informational note in the report", detail);
  }
  return ok;
}

bool criterion_cli(std::string& detail) {
  bool ok = true;

  auto write_file = [](const std::string& name, const std::string& contents) {
    std::ofstream out(name);
    out << contents;
  };
  auto run_args = [](const std::vector<std::string>& args, std::string* text = nullptr) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    if (text) *text = out.str();
    return code;
  };

  write_file("acc_so3.pn",
             "space M dim=3 coords=x1,x2,x3\nbivector L on M\n  1 2: x3\n  2 3: x1\n  1 3: -x2\n"
             "endo n on M\n  1 1: 1\n  2 2: 1\n  3 3: 1\ncheck algebroid L n\n"
             "check correspondence L n convention=right\n");
  ok &= expect(run_args({"verify", "acc_so3.pn"}) == 0, "so(3) exits 0", detail);

  write_file("acc_bad.pn",
             "space M dim=3 coords=x1,x2,x3\nbivector L on M\n  1 2: 1\n  2 3: x2\n"
             "endo n on M\n  1 1: 1\n  2 2: 1\n  3 3: 1\ncheck algebroid L n\n");
  std::string text;
  ok &= expect(run_args({"verify", "acc_bad.pn", "--format", "json"}, &text) == 1,
               "non-Poisson exits 1", detail);
  {
    auto doc = nlohmann::json::parse(text);
    std::string witness;
    for (const auto& block : doc["checks"]) {
      for (const auto& e : block["entries"]) {
        if (e["verdict"] == "fail") witness = e["witness"];
      }
    }
    auto eq = witness.rfind(" = ");
    bool reparsed = false;
    if (eq != std::string::npos) {
      auto sp = testutil::r3();
      reparsed = parse_expr(witness.substr(eq + 3), sp) == Poly::constant(sp, Rational(1));
    }
    ok &= expect(reparsed, "re-parseable witness", detail);
  }

  write_file("acc_malformed.pn", "space M dim=2 coords=x1\n");
  std::string body;
  ok &= expect(run_args({"verify", "acc_malformed.pn"}, &body) == 2, "malformed exits 2", detail);
  ok &= expect(body.empty(), "no report body on parse errors", detail);

  for (const char* name : {"so3.pn", "nonpoisson.pn", "groupoid_r2.pn"}) {
    std::string full = std::string(PN_SAMPLES_DIR) + "/" + name;
    std::ifstream in(full);
    if (!in) {
      ok = expect(false, std::string("missing sample ") + full, detail);
      continue;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    std::string once = format_specfile(parse_specfile(buf.str()));
    std::string twice = format_specfile(parse_specfile(once));
    ok &= expect(once == twice, std::string("formatter idempotence on ") + name, detail);
  }

  std::remove("acc_so3.pn");
  std::remove("acc_bad.pn");
  std::remove("acc_malformed.pn");
  return ok;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "exact identity suite", 30.0, criterion_exact_identities},
      {2, "schouten / jacobiator cross-check", 10.0, criterion_schouten_jacobiator},
      {3, "numeric oracle within 1e-6, deterministic", 60.0, criterion_numeric_oracle},
      {4, "groupoid axioms in dimensions 1-3", 10.0, criterion_groupoid_axioms},
      {5, "algebroid/groupoid correspondence on the corpus", 60.0, criterion_correspondence},
      {6, "known multiplicative structures", 10.0, criterion_known_multiplicative},
      {7, "command-line interface contract", 30.0, criterion_cli},
  };

  bool all_ok = true;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed > c.budget_seconds) {
      ok = false;
      if (detail.empty()) detail = "exceeded time budget";
    }
    std::printf("[%s] criterion %d: %s (%.2fs, budget %.0fs)%s%s\n", ok ? "PASS" : "FAIL", c.id,
                c.title.c_str(), elapsed, c.budget_seconds, detail.empty() ? "" : " -- ",
                detail.c_str());
    all_ok = all_ok && ok;
  }
  return all_ok ? 0 : 1;
}
