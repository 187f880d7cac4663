#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "pn/cli.hpp"
#include "pn/parse.hpp"
#include "pn/poly.hpp"
#include "test_util.hpp"

using namespace pn;

namespace {

struct TempFile {
  explicit TempFile(const std::string& contents) {
    path = std::string("cli_test_") + std::to_string(counter++) + ".pn";
    std::ofstream out(path);
    out << contents;
  }
  ~TempFile() { std::remove(path.c_str()); }
  std::string path;
  static int counter;
};
int TempFile::counter = 0;

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

const char* kSo3 = R"(space M dim=3 coords=x1,x2,x3
bivector L on M
  1 2: x3
  2 3: x1
  1 3: -x2
endo n on M
  1 1: 1
  2 2: 1
  3 3: 1
check algebroid L n
check correspondence L n convention=right
)";

const char* kNonPoisson = R"(space M dim=3 coords=x1,x2,x3
bivector L on M
  1 2: 1
  2 3: x2
endo n on M
  1 1: 1
  2 2: 1
  3 3: 1
check algebroid L n
)";

}  // namespace

TEST_CASE("so(3) file exits 0") {
  TempFile f(kSo3);
  RunResult r = run_cli({"verify", f.path});
  CHECK(r.code == 0);
  CHECK(r.out.find("result: PASS") != std::string::npos);
  CHECK(r.out.find("[FAIL]") == std::string::npos);
  CHECK(r.out.find("[ERROR]") == std::string::npos);
}

TEST_CASE("non-Poisson file exits 1 with a re-parseable witness") {
  TempFile f(kNonPoisson);

  SUBCASE("text report") {
    RunResult r = run_cli({"verify", f.path});
    CHECK(r.code == 1);
    CHECK(r.out.find("jacobiator(x1,x2,x3) = 1") != std::string::npos);
    CHECK(r.out.find("result: FAIL") != std::string::npos);
  }

  SUBCASE("json report carries the witness expression") {
    RunResult r = run_cli({"verify", f.path, "--format", "json"});
    CHECK(r.code == 1);
    auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["all_pass"] == false);
    std::string witness;
    for (const auto& block : doc["checks"]) {
      for (const auto& e : block["entries"]) {
        if (e["verdict"] == "fail") witness = e["witness"];
      }
    }
    REQUIRE_FALSE(witness.empty());
    // Witness format is "<label> = <expr>" with a canonical expression.
    auto eq = witness.rfind(" = ");
    REQUIRE(eq != std::string::npos);
    std::string expr = witness.substr(eq + 3);
    auto sp = testutil::r3();
    CHECK(pn::parse_expr(expr, sp) == Poly::constant(sp, Rational(1)));
  }
}

TEST_CASE("malformed file exits 2 without a report body") {
  TempFile f("space M dim=2 coords=x1\n");
  RunResult r = run_cli({"verify", f.path});
  CHECK(r.code == 2);
  CHECK(r.out.empty());
  CHECK(r.err.find(":1:") != std::string::npos);
}

TEST_CASE("missing file and usage errors exit 2") {
  CHECK(run_cli({"verify", "does_not_exist.pn"}).code == 2);
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"verify"}).code == 2);
  CHECK(run_cli({"verify", "x", "--format", "yaml"}).code == 2);
}

TEST_CASE("text and json reports carry identical verdict sets") {
  TempFile f(kSo3);
  RunResult text = run_cli({"verify", f.path});
  RunResult json = run_cli({"verify", f.path, "--format", "json"});
  CHECK(text.code == json.code);

  auto doc = nlohmann::json::parse(json.out);
  int pass = 0, fail = 0;
  for (const auto& block : doc["checks"]) {
    for (const auto& e : block["entries"]) {
      if (e["informational"] == true) continue;
      if (e["verdict"] == "pass") ++pass;
      if (e["verdict"] == "fail") ++fail;
    }
  }
  // Count verdict lines in the text report.
  int text_pass = 0, text_fail = 0;
  std::istringstream lines(text.out);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.rfind("[PASS]", 0) == 0) ++text_pass;
    if (line.rfind("[FAIL]", 0) == 0) ++text_fail;
  }
  CHECK(pass == text_pass);
  CHECK(fail == text_fail);
  CHECK(doc["summary"]["pass"] == pass);
}

TEST_CASE("reports are byte-identical across runs with the same seed") {
  TempFile f("space M dim=2 coords=x1,x2\nbivector L on M\n  1 2: x1\nendo n on M\n  1 1: 1\n  2 2: 1\ncheck oracle trials=20\ncheck groupoid L n\n");
  RunResult a = run_cli({"verify", f.path, "--seed", "11"});
  RunResult b = run_cli({"verify", f.path, "--seed", "11"});
  CHECK(a.code == b.code);
  CHECK(a.out == b.out);

  RunResult j1 = run_cli({"verify", f.path, "--format", "json", "--seed", "11"});
  RunResult j2 = run_cli({"verify", f.path, "--format", "json", "--seed", "11"});
  CHECK(j1.out == j2.out);
}

TEST_CASE("groupoid check of an extended structure reports the documented failure") {
  TempFile f("space M dim=2 coords=x1,x2\nbivector w on M\n  1 2: 1\nendo n on M\n  1 1: 1\n  2 2: 1\ncheck groupoid w n convention=right\n");
  RunResult r = run_cli({"verify", f.path});
  CHECK(r.code == 1);
  CHECK(r.out.find("bivector_multiplicative") != std::string::npos);
  CHECK(r.out.find("composability_preserved") != std::string::npos);
  CHECK(r.out.find("note: informational:") != std::string::npos);
  CHECK(r.out.find("[INFO pass] invariant.bivector") != std::string::npos);
}

TEST_CASE("global convention flag applies when the file omits one") {
  TempFile f("space M dim=2 coords=x1,x2\nbivector w on M\n  1 2: x1\nendo n on M\n  1 1: 1\n  2 2: 1\ncheck correspondence w n\n");
  RunResult right = run_cli({"verify", f.path});
  RunResult left = run_cli({"verify", f.path, "--convention", "left"});
  CHECK(right.code == 0);
  CHECK(left.code == 0);
  CHECK(right.out.find("convention=right") != std::string::npos);
  CHECK(left.out.find("convention=left") != std::string::npos);
}
