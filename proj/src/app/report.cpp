#include <cstdio>
#include <sstream>

#include "detail.hpp"

namespace g2forge::app {

RingChoice parse_ring_choice(const std::string& text) {
  if (text == "exact") return RingChoice::exact;
  if (text == "float") return RingChoice::floating;
  if (text == "natural" || text.empty()) return RingChoice::natural;
  throw PreconditionError("unknown ring '" + text + "' (expected exact or float)");
}

namespace detail {

Ring choose_ring(const std::vector<Ring>& needed, RingChoice choice) {
  Ring r = Ring::rational;
  for (Ring n : needed) r = join(r, n);
  switch (choice) {
    case RingChoice::natural:
      return r;
    case RingChoice::exact:
      if (r == Ring::float64) throw RingMismatch("inputs contain irrational coefficients; use --ring float");
      return r;
    case RingChoice::floating:
      if (r == Ring::polynomial) throw RingMismatch("inputs contain symbols; the float ring cannot hold them");
      return Ring::float64;
  }
  return r;
}

std::string ring_label(Ring r) { return to_string(r); }

Ring natural_ring(const std::string& algebra) { return ring_of(load_algebra(algebra)); }

std::string vector_name(int i) { return "e" + std::to_string(i + 1); }

json provenance(const Options& opts, Ring ring) {
  return {{"ring", ring_label(ring)}, {"tolerance", opts.tol}, {"seed", opts.seed}};
}

}  // namespace detail

json make_report(const std::string& command, json provenance, json inputs, json results, json assertions) {
  json report;
  report["command"] = command;
  report["provenance"] = std::move(provenance);
  report["inputs"] = std::move(inputs);
  report["results"] = std::move(results);
  report["assertions"] = std::move(assertions);
  bool passed = true;
  for (const auto& a : report["assertions"]) passed = passed && a.value("passed", false);
  report["passed"] = passed;
  return report;
}

bool report_passed(const json& report) { return report.value("passed", false); }

namespace {

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  return v.dump();
}

bool is_matrix(const json& v) {
  if (!v.is_array() || v.empty()) return false;
  for (const auto& row : v)
    if (!row.is_array() || row.size() != v.size()) return false;
  for (const auto& row : v)
    for (const auto& x : row)
      if (!x.is_string()) return false;
  return true;
}

void text_value(std::ostringstream& out, const std::string& key, const json& v, int indent) {
  std::string pad(static_cast<std::size_t>(indent), ' ');
  if (is_matrix(v)) {
    out << pad << key << ":\n";
    std::vector<std::size_t> width(v.size(), 0);
    for (const auto& row : v)
      for (std::size_t j = 0; j < row.size(); ++j) width[j] = std::max(width[j], row[j].get<std::string>().size());
    for (const auto& row : v) {
      out << pad << "  [";
      for (std::size_t j = 0; j < row.size(); ++j) {
        std::string s = row[j].get<std::string>();
        out << (j ? "  " : "") << std::string(width[j] - s.size(), ' ') << s;
      }
      out << "]\n";
    }
  } else if (v.is_object()) {
    out << pad << key << ":\n";
    for (const auto& [k, x] : v.items()) text_value(out, k, x, indent + 2);
  } else if (v.is_array() && !v.empty() && v.front().is_object()) {
    out << pad << key << ":\n";
    for (std::size_t i = 0; i < v.size(); ++i) text_value(out, "[" + std::to_string(i) + "]", v[i], indent + 2);
  } else if (v.is_array()) {
    out << pad << key << ": [";
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << scalar_text(v[i]);
    out << "]\n";
  } else {
    out << pad << key << ": " << scalar_text(v) << "\n";
  }
}

std::string verdict(bool passed, bool color) {
  if (!color) return passed ? "PASS" : "FAIL";
  return passed ? "\x1b[32mPASS\x1b[0m" : "\x1b[31mFAIL\x1b[0m";
}

std::string md_escape(std::string s) {
  std::string out;
  for (char c : s) {
    if (c == '|' || c == '*' || c == '_') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string render_text(const json& report, bool color) {
  std::ostringstream out;
  out << report.value("command", std::string("report")) << "\n";
  for (const char* section : {"provenance", "inputs", "results"})
    if (report.contains(section) && !report[section].empty()) text_value(out, section, report[section], 0);
  if (report.contains("assertions") && !report["assertions"].empty()) {
    out << "assertions:\n";
    for (const auto& a : report["assertions"]) {
      out << "  " << verdict(a.value("passed", false), color) << "  " << a.value("name", std::string());
      if (a.contains("expected") || a.contains("computed"))
        out << "  (expected " << (a.contains("expected") ? scalar_text(a["expected"]) : "-") << ", computed "
            << (a.contains("computed") ? scalar_text(a["computed"]) : "-") << ")";
      if (a.contains("detail")) out << "  " << a["detail"].get<std::string>();
      out << "\n";
    }
  }
  out << "overall: " << verdict(report_passed(report), color) << "\n";
  return out.str();
}

std::string render_markdown(const json& report) {
  std::ostringstream out;
  out << "# " << report.value("command", std::string("report")) << "\n\n";
  const json& results = report.contains("results") ? report["results"] : json::object();
  if (results.contains("rows") && results["rows"].is_array()) {
    out << "| algebra | structure equations | lambda | sign | matches table |\n";
    out << "|---|---|---|---|---|\n";
    for (const auto& row : results["rows"])
      out << "| " << md_escape(row.value("algebra", std::string())) << " | "
          << md_escape(row.value("equations", std::string())) << " | `" << row.value("lambda", std::string()) << "` | "
          << row.value("sign", std::string()) << " | " << (row.value("matches_reference", false) ? "yes" : "no")
          << " |\n";
    out << "\n";
  } else {
    out << "```json\n" << results.dump(2) << "\n```\n\n";
  }
  if (report.contains("assertions") && !report["assertions"].empty()) {
    out << "| assertion | verdict | expected | computed |\n|---|---|---|---|\n";
    for (const auto& a : report["assertions"])
      out << "| " << md_escape(a.value("name", std::string())) << " | " << verdict(a.value("passed", false), false)
          << " | " << (a.contains("expected") ? "`" + scalar_text(a["expected"]) + "`" : "") << " | "
          << (a.contains("computed") ? "`" + scalar_text(a["computed"]) + "`" : "") << " |\n";
    out << "\n";
  }
  out << "**overall: " << verdict(report_passed(report), false) << "**\n";
  return out.str();
}

}  // namespace g2forge::app
