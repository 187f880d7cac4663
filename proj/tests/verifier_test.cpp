#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pn/calculus.hpp"
#include "pn/oracle.hpp"
#include "pn/parse.hpp"
#include "pn/verifier.hpp"
#include "test_util.hpp"

using namespace pn;

namespace {

Bivector so3(const ChartPtr& sp) {
  Bivector P(sp);
  P.set_component(0, 1, parse_expr("x3", sp));
  P.set_component(1, 2, parse_expr("x1", sp));
  P.set_component(0, 2, parse_expr("-x2", sp));
  return P;
}

Bivector perturbed(const ChartPtr& sp) {
  Bivector P(sp);
  P.set_component(0, 1, parse_expr("1", sp));
  P.set_component(1, 2, parse_expr("x2", sp));
  return P;
}

EndoField scalar_endo(const ChartPtr& sp, const char* c) {
  EndoField N(sp);
  for (int i = 0; i < sp->dim(); ++i) N.set_entry(i, i, parse_expr(c, sp));
  return N;
}

const CheckEntry& find_entry(const CheckReport& rep, const std::string& id) {
  for (const auto& e : rep.entries()) {
    if (e.id == id) return e;
  }
  FAIL("missing entry: ", id);
  static CheckEntry dummy;
  return dummy;
}

}  // namespace

TEST_CASE("algebroid suite examples") {
  auto sp = testutil::r3();

  SUBCASE("so(3) with a constant scalar endo passes all four") {
    CheckReport rep = run_algebroid_suite({so3(sp), scalar_endo(sp, "5/4")});
    CHECK(rep.entries().size() == 4);
    CHECK(rep.all_required_pass());
    CHECK(rep.count(Verdict::Pass) == 4);
  }

  SUBCASE("non-Poisson bivector fails only item one") {
    CheckReport rep = run_algebroid_suite({perturbed(sp), EndoField::identity(sp)});
    CHECK(rep.entries()[0].verdict == Verdict::Fail);
    CHECK(rep.entries()[1].verdict == Verdict::Pass);
    CHECK(rep.entries()[2].verdict == Verdict::Pass);
    CHECK(rep.entries()[3].verdict == Verdict::Pass);
  }

  SUBCASE("zero bivector with a torsion-free endo passes vacuously") {
    CheckReport rep = run_algebroid_suite({Bivector(sp), scalar_endo(sp, "2")});
    CHECK(rep.all_required_pass());
  }
}

TEST_CASE("groupoid suite examples") {
  auto sp = testutil::r3();
  PairGroupoid G = PairGroupoid::over(sp);

  SUBCASE("classical structure: multiplicative but not invariant") {
    Bivector P = extend_bivector(G, so3(sp), Convention::Right) -
                 extend_bivector(G, so3(sp), Convention::Left);
    CheckReport rep =
        run_groupoid_suite(G, P, EndoField::identity(G.total()), EndoField::identity(sp));
    CHECK(find_entry(rep, "poisson.schouten_square_zero").verdict == Verdict::Pass);
    CHECK(find_entry(rep, "compat.concomitant_zero").verdict == Verdict::Pass);
    CHECK(find_entry(rep, "bivector_multiplicative").verdict == Verdict::Pass);
    CHECK(find_entry(rep, "endo_multiplicative").verdict == Verdict::Pass);
    CHECK(find_entry(rep, "invariant.bivector").verdict == Verdict::Fail);
    CHECK(find_entry(rep, "invariant.bivector").informational);
    // Informational failures do not spoil the required verdicts.
    CHECK(rep.all_required_pass());
  }

  SUBCASE("right-invariant extension: PN and endo-multiplicative, bivector fails with note") {
    Bivector P = extend_bivector(G, so3(sp), Convention::Right);
    EndoField N = extend_endo(G, scalar_endo(sp, "3"), Convention::Right);
    CheckReport rep = run_groupoid_suite(G, P, N, scalar_endo(sp, "3"));
    CHECK(find_entry(rep, "poisson.schouten_square_zero").verdict == Verdict::Pass);
    CHECK(find_entry(rep, "nijenhuis.torsion_zero").verdict == Verdict::Pass);
    CHECK(find_entry(rep, "compat.sharp_intertwine").verdict == Verdict::Pass);
    CHECK(find_entry(rep, "compat.concomitant_zero").verdict == Verdict::Pass);
    CHECK(find_entry(rep, "endo_multiplicative").verdict == Verdict::Pass);
    const CheckEntry& biv = find_entry(rep, "bivector_multiplicative");
    CHECK(biv.verdict == Verdict::Fail);
    CHECK(biv.witness.find("composability_preserved") != std::string::npos);
    CHECK_FALSE(biv.note.empty());
    CHECK(find_entry(rep, "invariant.bivector").verdict == Verdict::Pass);
    CHECK(find_entry(rep, "invariant.endo").verdict == Verdict::Pass);
    CHECK_FALSE(rep.all_required_pass());
  }

  SUBCASE("zero structure passes everything") {
    CheckReport rep = run_groupoid_suite(G, Bivector(G.total()), EndoField::identity(G.total()),
                                         EndoField::identity(sp));
    CHECK(rep.all_required_pass());
  }
}

TEST_CASE("correspondence examples") {
  auto sp = testutil::r3();

  SUBCASE("so(3) with scalar endo: everything matches, round trip exact") {
    CheckReport rep = run_correspondence({so3(sp), scalar_endo(sp, "5/2")}, Convention::Right);
    CHECK(rep.all_required_pass());
    CHECK(find_entry(rep, "roundtrip.bivector").verdict == Verdict::Pass);
    CHECK(find_entry(rep, "roundtrip.endo").verdict == Verdict::Pass);
    CHECK(find_entry(rep, "match.poisson").verdict == Verdict::Pass);
    CHECK(find_entry(rep, "groupoid.bivector_multiplicative").informational);
  }

  SUBCASE("non-Poisson data fails at both levels with matched verdicts") {
    CheckReport rep = run_correspondence({perturbed(sp), EndoField::identity(sp)}, Convention::Right);
    CHECK(find_entry(rep, "algebroid.poisson.schouten_square_zero").verdict == Verdict::Fail);
    CHECK(find_entry(rep, "groupoid.poisson.schouten_square_zero").verdict == Verdict::Fail);
    CHECK(find_entry(rep, "match.poisson").verdict == Verdict::Pass);
    CHECK(find_entry(rep, "match.torsion").verdict == Verdict::Pass);
  }

  SUBCASE("zero data passes under both conventions") {
    for (auto conv : {Convention::Right, Convention::Left}) {
      CheckReport rep = run_correspondence({Bivector(sp), EndoField::identity(sp)}, conv);
      CHECK(rep.all_required_pass());
    }
  }
}

TEST_CASE("correspondence over the standard corpus") {
  auto corpus = standard_corpus();
  REQUIRE(corpus.size() >= 20);

  bool saw_fail[4] = {false, false, false, false};
  bool saw_pass[4] = {false, false, false, false};

  for (const auto& data : corpus) {
    CheckReport rep = run_correspondence(data, Convention::Right);
    for (const char* id : {"match.poisson", "match.torsion", "match.sharp_compat", "match.concomitant"}) {
      CHECK(find_entry(rep, id).verdict == Verdict::Pass);
    }
    CHECK(find_entry(rep, "roundtrip.bivector").verdict == Verdict::Pass);
    CHECK(find_entry(rep, "roundtrip.endo").verdict == Verdict::Pass);
    CHECK(find_entry(rep, "groupoid.endo_multiplicative").verdict == Verdict::Pass);

    CheckReport alg = run_algebroid_suite(data);
    for (int k = 0; k < 4; ++k) {
      auto v = alg.entries()[static_cast<std::size_t>(k)].verdict;
      (v == Verdict::Pass ? saw_pass : saw_fail)[k] = true;
    }
  }
  // The corpus is genuinely mixed: every item passes somewhere and fails
  // somewhere (the concomitant's failure mode is the error verdict when
  // sharp compatibility is lost, counted here as non-pass).
  for (int k = 0; k < 3; ++k) {
    CHECK(saw_pass[k]);
    CHECK(saw_fail[k]);
  }
  CHECK(saw_pass[3]);
}

TEST_CASE("every corpus endomorphism extends multiplicatively") {
  for (const auto& data : standard_corpus()) {
    PairGroupoid G = PairGroupoid::over(data.base());
    EndoField N = extend_endo(G, data.n, Convention::Right);
    CHECK(check_endo_multiplicative(G, N, data.n).ok);
  }
}

TEST_CASE("correspondence matching under the left convention") {
  auto corpus = standard_corpus();
  int checked = 0;
  for (std::size_t i = 0; i < corpus.size(); i += 5) {
    CheckReport rep = run_correspondence(corpus[i], Convention::Left);
    CHECK(find_entry(rep, "roundtrip.bivector").verdict == Verdict::Pass);
    CHECK(find_entry(rep, "match.poisson").verdict == Verdict::Pass);
    CHECK(find_entry(rep, "match.concomitant").verdict == Verdict::Pass);
    ++checked;
  }
  CHECK(checked >= 4);
}

TEST_CASE("reports are deterministic") {
  auto sp = testutil::r3();
  CheckReport a = run_correspondence({so3(sp), scalar_endo(sp, "2")}, Convention::Right);
  CheckReport b = run_correspondence({so3(sp), scalar_endo(sp, "2")}, Convention::Right);
  REQUIRE(a.entries().size() == b.entries().size());
  for (std::size_t k = 0; k < a.entries().size(); ++k) {
    CHECK(a.entries()[k].id == b.entries()[k].id);
    CHECK(a.entries()[k].verdict == b.entries()[k].verdict);
    CHECK(a.entries()[k].witness == b.entries()[k].witness);
    CHECK(a.entries()[k].note == b.entries()[k].note);
  }
}

TEST_CASE("numeric oracle") {
  auto sp = testutil::r3();

  SUBCASE("derivatives of constants deviate by exactly zero") {
    Poly c = Poly::constant(sp, Rational(7, 3));
    oracle::OracleCase k{"constant_gradient", 3,
                         [g = d_function(c)](const std::vector<Rational>& pt) {
                           std::vector<Rational> out;
                           for (int i = 0; i < 3; ++i) out.push_back(g.component(i).eval(pt));
                           return out;
                         },
                         oracle::num_d(oracle::lift(c))};
    CHECK(oracle::max_relative_deviation(k, 20, 7) == 0.0);
  }

  SUBCASE("battery stays within tolerance on 100 trials") {
    for (auto dim : {2, 3}) {
      auto space = dim == 2 ? testutil::r2() : testutil::r3();
      auto battery = oracle::oracle_battery(space, 12345);
      CHECK(battery.size() >= 12);
      for (const auto& c : battery) {
        double dev = oracle::max_relative_deviation(c, 100, 999);
        CAPTURE(c.name);
        CHECK(dev < oracle::kTolerance);
      }
    }
  }

  SUBCASE("fixed seed reproduces deviations bit for bit") {
    auto battery1 = oracle::oracle_battery(sp, 42);
    auto battery2 = oracle::oracle_battery(sp, 42);
    REQUIRE(battery1.size() == battery2.size());
    for (std::size_t k = 0; k < battery1.size(); ++k) {
      double d1 = oracle::max_relative_deviation(battery1[k], 50, 77);
      double d2 = oracle::max_relative_deviation(battery2[k], 50, 77);
      CHECK(d1 == d2);
    }
  }

  SUBCASE("dimension one battery is degenerate but well-formed") {
    auto battery = oracle::oracle_battery(testutil::chart({"x1"}), 5);
    for (const auto& c : battery) {
      CHECK(oracle::max_relative_deviation(c, 25, 3) < oracle::kTolerance);
    }
  }
}
