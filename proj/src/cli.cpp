#include "pn/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "pn/oracle.hpp"
#include "pn/specfile.hpp"
#include "pn/verifier.hpp"

namespace pn::cli {

namespace {

struct CheckRun {
  std::string title;
  CheckReport report;
};

std::string fmt_deviation(double dev) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", dev);
  return buf;
}

CheckReport run_oracle_check(const SpecFile& file, int trials, std::uint64_t seed) {
  CheckReport report;
  if (file.spaces.empty()) {
    report.add_info("oracle", Verdict::Pass, "", "no spaces declared, nothing to sample");
    return report;
  }
  for (const auto& s : file.spaces) {
    auto battery = oracle::oracle_battery(s.chart, seed);
    for (const auto& c : battery) {
      double dev = oracle::max_relative_deviation(c, trials, seed);
      std::string id = "oracle." + s.name + "." + c.name;
      std::string note =
          "max deviation " + fmt_deviation(dev) + " over " + std::to_string(trials) + " trials";
      if (dev < oracle::kTolerance) {
        report.add(id, Verdict::Pass, "", note);
      } else {
        report.add(id, Verdict::Fail, "deviation " + fmt_deviation(dev) + " exceeds 1e-06", note);
      }
    }
  }
  return report;
}

CheckRun execute(const SpecFile& file, const CheckRequest& req, Convention global_conv, int trials,
                 std::uint64_t seed) {
  CheckRun run;
  switch (req.kind) {
    case CheckRequest::Kind::Algebroid: {
      const auto* b = file.find_bivector(req.bivector);
      const auto* e = file.find_endo(req.endo);
      run.title = "check algebroid " + req.bivector + " " + req.endo;
      run.report = run_algebroid_suite({b->value, e->value});
      break;
    }
    case CheckRequest::Kind::Groupoid: {
      const auto* b = file.find_bivector(req.bivector);
      const auto* e = file.find_endo(req.endo);
      Convention conv = req.convention.value_or(global_conv);
      run.title = std::string("check groupoid ") + req.bivector + " " + req.endo +
                  " convention=" + convention_name(conv);
      PairGroupoid G = PairGroupoid::over(b->value.space());
      Bivector P = extend_bivector(G, b->value, conv);
      EndoField N = extend_endo(G, e->value, conv);
      run.report = run_groupoid_suite(G, P, N, e->value, conv);
      break;
    }
    case CheckRequest::Kind::Correspondence: {
      const auto* b = file.find_bivector(req.bivector);
      const auto* e = file.find_endo(req.endo);
      Convention conv = req.convention.value_or(global_conv);
      run.title = std::string("check correspondence ") + req.bivector + " " + req.endo +
                  " convention=" + convention_name(conv);
      run.report = run_correspondence({b->value, e->value}, conv);
      break;
    }
    case CheckRequest::Kind::Oracle: {
      int t = req.trials.value_or(trials);
      std::uint64_t s = req.seed.value_or(seed);
      run.title = "check oracle trials=" + std::to_string(t) + " seed=" + std::to_string(s);
      run.report = run_oracle_check(file, t, s);
      break;
    }
  }
  return run;
}

void render_text(const std::vector<CheckRun>& runs, bool all_pass, std::ostream& out) {
  for (const auto& run : runs) {
    out << "== " << run.title << " ==\n";
    for (const auto& e : run.report.entries()) {
      if (e.informational) {
        out << "[INFO " << verdict_name(e.verdict) << "] " << e.id << "\n";
      } else {
        std::string tag = verdict_name(e.verdict);
        std::transform(tag.begin(), tag.end(), tag.begin(),
                       [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
        out << "[" << tag << "] " << e.id << "\n";
      }
      if (!e.witness.empty()) out << "    witness: " << e.witness << "\n";
      if (!e.note.empty()) out << "    note: " << e.note << "\n";
    }
    out << "summary: " << run.report.count(Verdict::Pass) << " pass, "
        << run.report.count(Verdict::Fail) << " fail, " << run.report.count(Verdict::Error)
        << " error, " << run.report.informational_count() << " informational\n\n";
  }
  out << "result: " << (all_pass ? "PASS" : "FAIL") << "\n";
}

void render_json(const std::vector<CheckRun>& runs, bool all_pass, const std::string& path,
                 std::ostream& out) {
  nlohmann::json doc;
  doc["tool"] = "pncheck";
  doc["file"] = path;
  int pass = 0, fail = 0, error = 0, info = 0;
  doc["checks"] = nlohmann::json::array();
  for (const auto& run : runs) {
    nlohmann::json block;
    block["title"] = run.title;
    block["entries"] = nlohmann::json::array();
    for (const auto& e : run.report.entries()) {
      nlohmann::json je;
      je["id"] = e.id;
      je["verdict"] = verdict_name(e.verdict);
      je["witness"] = e.witness;
      je["note"] = e.note;
      je["informational"] = e.informational;
      block["entries"].push_back(std::move(je));
    }
    block["summary"] = {{"pass", run.report.count(Verdict::Pass)},
                        {"fail", run.report.count(Verdict::Fail)},
                        {"error", run.report.count(Verdict::Error)},
                        {"informational", run.report.informational_count()}};
    pass += run.report.count(Verdict::Pass);
    fail += run.report.count(Verdict::Fail);
    error += run.report.count(Verdict::Error);
    info += run.report.informational_count();
    doc["checks"].push_back(std::move(block));
  }
  doc["summary"] = {{"pass", pass}, {"fail", fail}, {"error", error}, {"informational", info}};
  doc["all_pass"] = all_pass;
  out << doc.dump(2) << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"pncheck: exact symbolic checks for Poisson and Nijenhuis structure data"};
  app.require_subcommand(1);

  auto* verify = app.add_subcommand("verify", "parse a check file and run its checks");
  std::string path;
  verify->add_option("path", path, "check file")->required();
  std::string format = "text";
  verify->add_option("--format", format, "report format")->check(CLI::IsMember({"text", "json"}));
  std::uint64_t seed = 0;
  verify->add_option("--seed", seed, "seed for oracle checks (default 0)");
  int trials = 100;
  verify->add_option("--trials", trials, "trial count for oracle checks (default 100)")
      ->check(CLI::PositiveNumber);
  std::string convention = "right";
  verify->add_option("--convention", convention, "default extension convention")
      ->check(CLI::IsMember({"right", "left"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  std::ifstream in(path);
  if (!in) {
    err << "error: cannot open '" << path << "'\n";
    return 2;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();

  SpecFile file;
  try {
    file = parse_specfile(buffer.str());
  } catch (const SpecFileError& e) {
    err << path << ":" << e.line << ":" << e.col << ": error: " << e.what() << "\n";
    return 2;
  }

  Convention conv = convention == "left" ? Convention::Left : Convention::Right;
  std::vector<CheckRun> runs;
  bool all_pass = true;
  for (const auto& req : file.checks) {
    runs.push_back(execute(file, req, conv, trials, seed));
    all_pass = all_pass && runs.back().report.all_required_pass();
  }

  if (format == "json") {
    render_json(runs, all_pass, path, out);
  } else {
    render_text(runs, all_pass, out);
  }
  return all_pass ? 0 : 1;
}

}  // namespace pn::cli
