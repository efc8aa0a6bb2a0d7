#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "g2forge/g2.hpp"

namespace g2forge::app {

using nlohmann::json;

enum class RingChoice {
  natural,  // whatever the inputs need
  exact,    // rational or polynomial; irrational inputs are rejected
  floating, // double precision; symbolic inputs are rejected
};

RingChoice parse_ring_choice(const std::string& text);

struct Options {
  RingChoice ring = RingChoice::natural;
  double tol = kDefaultTolerance;
  std::uint64_t seed = 1;
};

/// Reports share one shape:
///   {"command", "provenance", "inputs", "results", "assertions", "passed"}
/// Assertions are {"name", "passed"} plus optional "expected", "computed",
/// "detail". Scalars are strings in canonical form ("p/q", polynomials in
/// b1 < ... < b15 < c order, shortest round-trip decimals).
json make_report(const std::string& command, json provenance, json inputs, json results, json assertions);
bool report_passed(const json& report);

json algebra_list();
json algebra_show(const std::string& algebra, const Options& opts);
json su3_check(const std::string& algebra, const std::string& omega, const std::string& sigma, bool lenient,
               const Options& opts);
json metric_analyze(const std::string& algebra, const std::optional<std::string>& metric, const Options& opts);
json g2_analyze(const std::string& algebra, const std::string& phi, G2Orientation orientation, const Options& opts);
json lambda_table(const Options& opts);
json obstruction(const std::string& which, int trials, const Options& opts);

struct ReproduceOptions {
  std::optional<std::string> only;
  bool update_golden = false;
  std::string golden_dir;
};

/// Every worked example and criterion with expected and computed values;
/// exact-ring data is diffed against golden files in golden_dir.
json reproduce(const Options& opts, const ReproduceOptions& ropts);
std::vector<std::string> reproduce_items();

/// Scenario files: line-oriented sections [algebra], [metric], [forms],
/// [analyses] and optional [expect]; '#' starts a comment.
struct Scenario {
  std::string algebra;
  std::optional<std::string> metric;
  std::vector<std::pair<std::string, std::string>> forms;      // name -> text
  std::vector<std::string> analyses;
  std::vector<std::pair<std::string, std::string>> expect;     // key -> expected text
  std::optional<std::string> ring;
  std::map<std::string, int> lines;                            // key -> source line
};

Scenario parse_scenario(const std::string& text);
json check_scenario(const Scenario& scenario, const Options& opts, const std::string& source = "");
json check_file(const std::string& path, const Options& opts);

std::string render_text(const json& report, bool color);
std::string render_markdown(const json& report);

}  // namespace g2forge::app
