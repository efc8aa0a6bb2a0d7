#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "g2forge/app.hpp"

using namespace g2forge;
using app::json;

namespace {

const std::string kExe = G2FORGE_EXE;
const std::string kScenarios = G2FORGE_SCENARIOS;

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = kExe + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string temp_file(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path.string();
}

ParseError parse_failure(const std::string& text) {
  try {
    app::parse_scenario(text);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("scenario parsed without error");
  return ParseError("", 0);
}

}  // namespace

TEST_CASE("reports round-trip through JSON text") {
  app::Options opts;
  for (const json& report : {app::metric_analyze("n28", std::nullopt, opts), app::algebra_show("s28", opts),
                             app::g2_analyze("s28", "s28-phi", G2Orientation::coframe, opts)}) {
    CHECK(json::parse(report.dump()) == report);
    CHECK(report.contains("provenance"));
    CHECK(report.contains("assertions"));
    CHECK(report["passed"].is_boolean());
  }
}

TEST_CASE("serialization is deterministic") {
  app::Options opts;
  CHECK(app::lambda_table(opts).dump() == app::lambda_table(opts).dump());
  app::ReproduceOptions r;
  r.only = "lcc-criterion";
  CHECK(app::reproduce(opts, r).dump() == app::reproduce(opts, r).dump());
  auto a = run("metric analyze n9");
  auto b = run("metric analyze n9");
  CHECK(a.out == b.out);
}

TEST_CASE("canonical scalar rendering") {
  app::Options opts;
  auto report = app::g2_analyze("s28", "s28-phi", G2Orientation::coframe, opts);
  CHECK(report["results"]["torsion"]["tau1"] == "-1/3*e7");
  CHECK(report["results"]["scal_torsion"] == "-21");
  CHECK(report["results"]["induced_sign"] == -1);
  CHECK(report["provenance"]["ring"] == "rational");
}

TEST_CASE("scenario parse errors carry line and column") {
  auto e = parse_failure("[algebra]\nname = n28\n[analyses]\nsu3, curvature\n");
  CHECK(e.line() == 4);
  CHECK(e.column() == 6);
  CHECK(std::string(e.what()).find("unknown analysis 'curvature'") != std::string::npos);

  e = parse_failure("[algebra]\nname = n28\n\n  [geometry]\n");
  CHECK(e.line() == 4);
  CHECK(e.column() == 4);

  e = parse_failure("[algebra]\nname n28\n");
  CHECK(e.line() == 2);

  e = parse_failure("[algebra]\nname = n28\n[forms]\nomega = e12 + 3x\n");
  CHECK(e.line() == 4);
  CHECK(e.column() > 9);

  e = parse_failure("name = n28\n");
  CHECK(e.line() == 1);

  e = parse_failure("[forms]\nomega = e12\n");
  CHECK(std::string(e.what()).find("missing [algebra]") != std::string::npos);

  e = parse_failure("[algebra]\nname = n28\n[analyses]\nsu3\n");
  CHECK(e.line() == 4);
}

TEST_CASE("scenario: coupled pair and nilsoliton on n28") {
  auto report = app::check_file(kScenarios + "/n28_coupled.scn", app::Options{});
  CHECK(report["passed"] == true);
  CHECK(report["results"]["su3"]["coupled"] == "-1");
  CHECK(report["results"]["nilsoliton"]["c"] == "-3");
  CHECK(report["results"]["nilsoliton"]["D"][4][4] == "4");
  CHECK(report["results"]["nilsoliton"]["D"][0][0] == "2");
}

TEST_CASE("scenario: hyperbolic family") {
  auto report = app::check_file(kScenarios + "/hyperbolic.scn", app::Options{});
  CHECK(report["passed"] == true);
  CHECK(report["results"]["g2"]["class"] == "locally_conformal_parallel");
  CHECK(report["results"]["g2"]["torsion"]["tau1"] == "-a*e7");
  CHECK(report["provenance"]["ring"] == "polynomial");
}

TEST_CASE("scenario: empty analysis list echoes the input") {
  auto report = app::check_file(kScenarios + "/echo_only.scn", app::Options{});
  CHECK(report["passed"] == true);
  CHECK(report["results"] == json::object());
  CHECK(report["assertions"].empty());
  CHECK(report["inputs"]["algebra"] == "(0,0,0,0,e12,e13)");
}

TEST_CASE("scenario expectations that fail are reported with their line") {
  auto sc = app::parse_scenario("[algebra]\nname = n28\n[analyses]\nricci\n[expect]\nscal = -2\nmissing = 1\n");
  auto report = app::check_scenario(sc, app::Options{});
  CHECK(report["passed"] == false);
  const auto& a = report["assertions"];
  REQUIRE(a.size() == 2);
  CHECK(a[0]["name"] == "expect scal");
  CHECK(a[0]["computed"] == "-2");
  CHECK(a[0]["passed"] == true);
  CHECK(a[1]["passed"] == false);
  CHECK(a[1]["detail"].get<std::string>().find("line 7") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run("check " + kScenarios + "/n28_coupled.scn").code == 0);
  CHECK(run("su3 check n28 --omega n28-omega --sigma n28-sigma").code == 0);
  CHECK(run("su3 check n28 --omega e12+e34+e56 --sigma e123+e456").code == 1);
  CHECK(run("").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("--format yaml algebra list").code == 2);
  CHECK(run("algebra show '(0,0,e1 2)'").code == 2);
  auto bad = temp_file("g2forge_bad.scn", "[algebra]\nname = n28\n[analyses]\nholonomy\n");
  auto r = run("check " + bad);
  CHECK(r.code == 2);
  CHECK(r.out.find("line 4") != std::string::npos);
  auto wrong = temp_file("g2forge_wrong.scn", "[algebra]\nname = n28\n[analyses]\nricci\n[expect]\nscal = 3\n");
  CHECK(run("check " + wrong).code == 1);
}

TEST_CASE("output formats") {
  auto text = run("--format text metric analyze n28");
  CHECK(text.code == 0);
  CHECK(text.out.find('\x1b') == std::string::npos);  // G2FORGE_COLOR=0 in the test environment
  CHECK(text.out.find("PASS") != std::string::npos);
  auto md = run("--format md g2 analyze s28 --phi s28-phi");
  CHECK(md.out.find("| ") != std::string::npos);
  auto js = run("g2 analyze s28 --phi s28-phi --orientation induced");
  auto report = json::parse(js.out);
  CHECK(report["results"]["induced_sign"] == 1);
  CHECK(report["results"]["volume"] == "-1");
  CHECK(report["results"]["torsion"]["tau2"] == "5/3*e12+5/3*e34+10/3*e56");
}

TEST_CASE("float ring gives the same verdicts") {
  for (const char* item : {"n28-pair", "s28-torsion", "s28-star-ricci", "lcc-criterion"}) {
    app::ReproduceOptions r;
    r.only = item;
    app::Options exact, floating;
    floating.ring = app::RingChoice::floating;
    auto a = app::reproduce(exact, r)["results"]["items"][0];
    auto b = app::reproduce(floating, r)["results"]["items"][0];
    CHECK(b["ring"] == "float64");
    REQUIRE(a["checks"].size() == b["checks"].size());
    for (std::size_t i = 0; i < a["checks"].size(); ++i) CHECK(a["checks"][i]["passed"] == b["checks"][i]["passed"]);
  }
}
