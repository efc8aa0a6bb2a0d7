#include <fstream>
#include <set>
#include <sstream>

#include "analyses.hpp"

namespace g2forge::app {

using namespace detail;

namespace {

const std::set<std::string> kSections = {"algebra", "metric", "forms", "analyses", "expect"};
const std::set<std::string> kAnalyses = {"su3", "ricci", "metric", "einstein", "nilsoliton", "g2", "nilpotency"};
const std::set<std::string> kForms = {"omega", "sigma", "phi"};

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string& what, std::size_t line, std::size_t column) {
  throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what, 0, line,
                   column);
}

struct KeyValue {
  std::string key;
  std::string value;
  std::size_t value_column;
};

KeyValue split_key_value(const std::string& raw, std::size_t line) {
  auto eq = raw.find('=');
  if (eq == std::string::npos) fail("expected 'key = value'", line, raw.find_first_not_of(" \t") + 1);
  KeyValue kv{trim(raw.substr(0, eq)), trim(raw.substr(eq + 1)), 0};
  if (kv.key.empty()) fail("missing key before '='", line, eq + 1);
  auto v = raw.find_first_not_of(" \t", eq + 1);
  kv.value_column = v == std::string::npos ? raw.size() + 1 : v + 1;
  if (kv.value.empty()) fail("missing value after '='", line, kv.value_column);
  return kv;
}

std::string key_of(const std::string& section, const std::string& key) { return section + "." + key; }

}  // namespace

Scenario parse_scenario(const std::string& text) {
  Scenario sc;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  std::size_t line = 0;
  std::set<std::string> seen;
  bool has_algebra = false;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::string body = trim(raw);
    if (body.empty()) continue;
    std::size_t column = raw.find_first_not_of(" \t") + 1;
    if (body.front() == '[') {
      if (body.back() != ']') fail("unterminated section header", line, column);
      section = trim(body.substr(1, body.size() - 2));
      if (!kSections.count(section)) fail("unknown section [" + section + "]", line, column + 1);
      if (!seen.insert(section).second) fail("duplicate section [" + section + "]", line, column);
      sc.lines["[" + section + "]"] = static_cast<int>(line);
      continue;
    }
    if (section.empty()) fail("content before the first section", line, column);
    if (section == "analyses") {
      std::istringstream words(body);
      std::string word;
      while (words >> word) {
        if (word.back() == ',') word.pop_back();
        if (word.empty()) continue;
        if (!kAnalyses.count(word)) fail("unknown analysis '" + word + "'", line, raw.find(word) + 1);
        sc.analyses.push_back(word);
        sc.lines[key_of(section, word)] = static_cast<int>(line);
      }
      continue;
    }
    KeyValue kv = split_key_value(raw, line);
    if (sc.lines.count(key_of(section, kv.key))) fail("duplicate key '" + kv.key + "'", line, column);
    sc.lines[key_of(section, kv.key)] = static_cast<int>(line);
    if (section == "algebra") {
      if (kv.key == "name" || kv.key == "equations") {
        if (has_algebra) fail("algebra given twice", line, column);
        has_algebra = true;
        sc.algebra = kv.value;
      } else if (kv.key == "ring") {
        try {
          parse_ring_choice(kv.value);
        } catch (const Error&) {
          fail("unknown ring '" + kv.value + "'", line, kv.value_column);
        }
        sc.ring = kv.value;
      } else {
        fail("unknown key '" + kv.key + "' in [algebra]", line, column);
      }
    } else if (section == "metric") {
      if (kv.key != "g") fail("unknown key '" + kv.key + "' in [metric]", line, column);
      try {
        parse_matrix(kv.value);
      } catch (const ParseError& e) {
        fail(e.what(), line, kv.value_column + e.offset());
      }
      sc.metric = kv.value;
    } else if (section == "forms") {
      if (!kForms.count(kv.key)) fail("unknown form '" + kv.key + "'", line, column);
      int dim = kv.key == "phi" ? 7 : 6;
      int degree = kv.key == "omega" ? 2 : 3;
      try {
        load_form(kv.value, dim, degree);
      } catch (const ParseError& e) {
        fail(e.what(), line, kv.value_column + e.offset());
      }
      sc.forms.emplace_back(kv.key, kv.value);
    } else {
      sc.expect.emplace_back(kv.key, kv.value);
    }
  }
  if (!has_algebra) fail("missing [algebra] name or equations", line + 1, 1);
  try {
    load_algebra(sc.algebra);
  } catch (const ParseError& e) {
    int at = sc.lines.count("algebra.name") ? sc.lines["algebra.name"] : sc.lines["algebra.equations"];
    fail(e.what(), at, 1);
  }
  auto has_form = [&](const std::string& name) {
    return std::any_of(sc.forms.begin(), sc.forms.end(), [&](const auto& f) { return f.first == name; });
  };
  for (const auto& a : sc.analyses) {
    int at = sc.lines[key_of("analyses", a)];
    if (a == "su3" && !(has_form("omega") && has_form("sigma"))) fail("su3 needs omega and sigma in [forms]", at, 1);
    if (a == "g2" && !has_form("phi")) fail("g2 needs phi in [forms]", at, 1);
  }
  return sc;
}

json check_scenario(const Scenario& sc, const Options& base, const std::string& source) {
  Options opts = base;
  if (sc.ring) opts.ring = parse_ring_choice(*sc.ring);
  auto form_text = [&](const std::string& name) -> std::string {
    for (const auto& [k, v] : sc.forms)
      if (k == name) return v;
    return "";
  };
  std::vector<Ring> needed{natural_ring(sc.algebra)};
  for (const auto& [name, text] : sc.forms)
    needed.push_back(ring_of(load_form(text, name == "phi" ? 7 : 6, name == "omega" ? 2 : 3)));
  if (sc.metric) {
    auto m = parse_matrix(*sc.metric);
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) needed.push_back(m(i, j).ring());
  }
  Ring r = choose_ring(needed, opts.ring);
  auto wants = [&](std::initializer_list<const char*> names) {
    for (const char* n : names)
      if (std::find(sc.analyses.begin(), sc.analyses.end(), n) != sc.analyses.end()) return true;
    return false;
  };
  Assertions checks;
  Probes probes;
  json results = with_ring(r, [&](auto tag) {
    using T = decltype(tag);
    json out = json::object();
    auto L = load_algebra_as<T>(sc.algebra, opts.tol);
    if (wants({"nilpotency"})) {
      out["nilpotency"] = algebra_info(L);
      if (out["nilpotency"]["nilpotent"].is_boolean()) {
        probes["nilpotent"] = bool_probe(out["nilpotency"]["nilpotent"].get<bool>());
        probes["solvable"] = bool_probe(out["nilpotency"]["solvable"].get<bool>());
      }
    }
    if (wants({"su3"})) {
      if (L.dim() != 6) throw DimensionMismatch("su3 needs a 6-dimensional algebra");
      out["su3"] = su3_results(L, load_form_as<T>(form_text("omega"), 6, 2), load_form_as<T>(form_text("sigma"), 6, 3),
                               true, opts.tol, checks, &probes);
    }
    if (wants({"ricci", "metric", "einstein", "nilsoliton"})) {
      Matrix<T> g = sc.metric ? load_matrix_as<T>(*sc.metric) : Matrix<T>::identity(L.dim());
      try {
        MetricLieAlgebra<T> M(L, g);
        json m = metric_results(M, opts.tol, &probes);
        if (wants({"ricci", "metric"})) out["metric"] = m;
        if (wants({"einstein"})) out["einstein"] = m["einstein"];
        if (wants({"nilsoliton"})) out["nilsoliton"] = m["nilsoliton"];
      } catch (const PreconditionError& e) {
        checks.add("metric positive definite", false, nullptr, nullptr, e.what());
      }
    }
    if (wants({"g2"})) {
      if (L.dim() != 7) throw DimensionMismatch("g2 needs a 7-dimensional algebra");
      out["g2"] = g2_results(L, load_form_as<T>(form_text("phi"), 7, 3), G2Orientation::coframe, opts.tol, checks,
                             &probes);
    }
    return out;
  });
  for (const auto& [key, expected] : sc.expect) {
    auto it = probes.find(key);
    std::string line = "line " + std::to_string(sc.lines.at(key_of("expect", key)));
    if (it == probes.end()) {
      checks.add("expect " + key, false, expected, nullptr, line + ": no analysis produced '" + key + "'");
      continue;
    }
    try {
      auto [passed, computed] = it->second(expected);
      checks.add("expect " + key, passed, expected, computed, line);
    } catch (const Error& e) {
      checks.add("expect " + key, false, expected, nullptr, line + ": " + e.what());
    }
  }
  json inputs = {{"source", source}, {"algebra", sc.algebra}, {"analyses", sc.analyses}};
  if (sc.metric) inputs["metric"] = *sc.metric;
  json forms = json::object();
  for (const auto& [k, v] : sc.forms) forms[k] = v;
  inputs["forms"] = forms;
  return make_report("check", provenance(opts, r), inputs, results, checks.list());
}

json check_file(const std::string& path, const Options& opts) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot read scenario file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return check_scenario(parse_scenario(buffer.str()), opts, path);
}

}  // namespace g2forge::app
