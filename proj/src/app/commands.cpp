#include <fstream>

#include "analyses.hpp"

namespace g2forge::app {

using namespace detail;

namespace detail {

json survey_row(const SurveyRow& row) {
  json out = {{"algebra", row.algebra},
              {"equations", row.equations},
              {"lambda", to_string(row.lambda)},
              {"reference", to_string(row.reference)},
              {"matches_reference", row.matches_reference},
              {"homogeneous", row.homogeneous},
              {"sign", to_string(row.certificate.sign)},
              {"reference_sign", to_string(row.reference_sign)}};
  json cert;
  const auto& c = row.certificate;
  if (c.root) cert = {{"factor", to_string(c.factor)}, {"root", to_string(*c.root)}};
  if (!c.witnesses.empty()) {
    json w = json::array();
    for (std::size_t i = 0; i < c.witnesses.size(); ++i) {
      json assignment;
      for (const auto& [k, v] : c.witnesses[i]) assignment[k] = to_string(v);
      w.push_back({{"assignment", assignment}, {"value", to_string(c.witness_values[i])}});
    }
    cert["witnesses"] = w;
  }
  out["certificate"] = cert;
  return out;
}

json n4_report(const N4Report& r) {
  return {{"seed", r.seed},
          {"trials", r.trials},
          {"rejected_draws", r.rejected_draws},
          {"solver_failures", r.solver_failures},
          {"null_confirmed", r.null_confirmed},
          {"not_positive", r.not_positive},
          {"max_abs_hvv", to_string(r.max_abs_hvv)},
          {"max_min_eigenvalue", r.samples.empty() ? json(nullptr) : json(to_string(r.max_min_eigenvalue))}};
}

json n9_report(const N9Report& r) {
  json b = json::array();
  for (double x : r.best_b) b.push_back(to_string(x));
  return {{"frame", r.frame},
          {"seed", r.seed},
          {"starts", r.starts},
          {"stable_endpoints", r.stable_endpoints},
          {"feasible", r.feasible},
          {"best_residual", to_string(r.best_residual)},
          {"best_lambda", to_string(r.best_lambda)},
          {"best_b", b}};
}

}  // namespace detail

json algebra_list() {
  json rows = json::array();
  for (const auto& e : algebra_catalog())
    rows.push_back({{"name", e.name}, {"equations", e.equations}, {"description", e.description},
                    {"half_flat_row", e.half_flat_row}});
  json forms = json::array();
  for (const auto& f : form_catalog())
    forms.push_back({{"name", f.name}, {"dimension", f.dim}, {"form", f.text}, {"description", f.description}});
  return make_report("algebra list", json::object(), json::object(), {{"algebras", rows}, {"forms", forms}},
                     json::array());
}

json algebra_show(const std::string& algebra, const Options& opts) {
  Ring r = choose_ring({natural_ring(algebra)}, opts.ring);
  json results = with_ring(r, [&](auto tag) {
    using T = decltype(tag);
    return algebra_info(load_algebra_as<T>(algebra, opts.tol));
  });
  return make_report("algebra show", provenance(opts, r), {{"algebra", algebra}}, results, json::array());
}

json su3_check(const std::string& algebra, const std::string& omega, const std::string& sigma, bool lenient,
               const Options& opts) {
  auto w = load_form(omega, 6, 2);
  auto s = load_form(sigma, 6, 3);
  Ring r = choose_ring({natural_ring(algebra), ring_of(w), ring_of(s)}, opts.ring);
  Assertions checks;
  json inputs = {{"algebra", algebra}, {"omega", omega}, {"sigma", sigma}, {"lenient", lenient}};
  json results = with_ring(r, [&](auto tag) {
    using T = decltype(tag);
    auto L = load_algebra_as<T>(algebra, opts.tol);
    if (L.dim() != 6) throw DimensionMismatch("SU(3) structures need a 6-dimensional algebra");
    return su3_results(L, load_form_as<T>(omega, 6, 2), load_form_as<T>(sigma, 6, 3), lenient, opts.tol, checks,
                       nullptr);
  });
  return make_report("su3 check", provenance(opts, r), inputs, results, checks.list());
}

json metric_analyze(const std::string& algebra, const std::optional<std::string>& metric, const Options& opts) {
  std::vector<Ring> needed{natural_ring(algebra)};
  if (metric) {
    auto m = parse_matrix(*metric);
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) needed.push_back(m(i, j).ring());
  }
  Ring r = choose_ring(needed, opts.ring);
  Assertions checks;
  json inputs = {{"algebra", algebra}, {"metric", metric ? json(*metric) : json("identity")}};
  json results = with_ring(r, [&](auto tag) {
    using T = decltype(tag);
    auto L = load_algebra_as<T>(algebra, opts.tol);
    Matrix<T> g = metric ? load_matrix_as<T>(*metric) : Matrix<T>::identity(L.dim());
    try {
      MetricLieAlgebra<T> M(L, g);
      checks.add("metric positive definite", true);
      return metric_results(M, opts.tol, nullptr);
    } catch (const PreconditionError& e) {
      checks.add("metric positive definite", false, nullptr, nullptr, e.what());
      return json{{"error", e.what()}};
    }
  });
  return make_report("metric analyze", provenance(opts, r), inputs, results, checks.list());
}

json g2_analyze(const std::string& algebra, const std::string& phi, G2Orientation orientation, const Options& opts) {
  auto f = load_form(phi, 7, 3);
  Ring r = choose_ring({natural_ring(algebra), ring_of(f)}, opts.ring);
  Assertions checks;
  json inputs = {{"algebra", algebra}, {"phi", phi}};
  json results = with_ring(r, [&](auto tag) {
    using T = decltype(tag);
    auto L = load_algebra_as<T>(algebra, opts.tol);
    if (L.dim() != 7) throw DimensionMismatch("G2-structures need a 7-dimensional algebra");
    return g2_results(L, load_form_as<T>(phi, 7, 3), orientation, opts.tol, checks, nullptr);
  });
  return make_report("g2 analyze", provenance(opts, r), inputs, results, checks.list());
}

json lambda_table(const Options& opts) {
  auto rows = lambda_survey(opts.seed);
  json out = json::array();
  Assertions checks;
  int nonneg = 0, zero = 0, nonpos = 0, indefinite = 0;
  for (const auto& row : rows) {
    out.push_back(survey_row(row));
    checks.add(row.algebra + " lambda matches the tabulated polynomial", row.matches_reference,
               to_string(row.reference), to_string(row.lambda));
    checks.add(row.algebra + " sign certificate verified", verify_certificate(row.lambda, row.certificate),
               to_string(row.reference_sign), to_string(row.certificate.sign));
    switch (row.certificate.sign) {
      case SignClass::nonneg:
        ++nonneg;
        break;
      case SignClass::zero:
        ++zero;
        break;
      case SignClass::nonpos:
        ++nonpos;
        break;
      case SignClass::indefinite:
        ++indefinite;
        break;
      case SignClass::uncertified:
        break;
    }
  }
  json partition = {{"nonneg_or_zero", nonneg + zero}, {"nonpos", nonpos}, {"indefinite", indefinite}};
  checks.add("sign partition 21/1/2", nonneg + zero == 21 && nonpos == 1 && indefinite == 2, "21/1/2",
             std::to_string(nonneg + zero) + "/" + std::to_string(nonpos) + "/" + std::to_string(indefinite));
  return make_report("lambda-table", {{"ring", "polynomial"}, {"seed", opts.seed}}, json::object(),
                     {{"rows", out}, {"partition", partition}}, checks.list());
}

json obstruction(const std::string& which, int trials, const Options& opts) {
  Assertions checks;
  json results;
  if (which == "n4") {
    auto r = n4_obstruction_sample(trials, opts.seed);
    results = n4_report(r);
    checks.add("h(v, v) = 0 in every trial", r.null_confirmed == r.trials, r.trials, r.null_confirmed);
    checks.add("h not positive definite in every trial", r.not_positive == r.trials, r.trials, r.not_positive);
  } else if (which == "n9") {
    auto r = n9_nilsoliton_obstruction_sample(trials, opts.seed);
    results = n9_report(r);
    checks.add("no feasible start with lambda <= -1e-6", r.feasible == 0, 0, r.feasible);
    auto control = nilsoliton_obstruction_sample(
        parse_structure_equations<double>(catalog_algebra("n9").equations), "n9", trials, opts.seed);
    results["control"] = n9_report(control);
  } else {
    throw PreconditionError("unknown obstruction '" + which + "' (expected n4 or n9)");
  }
  return make_report("obstruction " + which, {{"ring", "float64"}, {"seed", opts.seed}, {"tolerance", opts.tol}},
                     {{"which", which}, {"trials", trials}}, results, checks.list());
}

}  // namespace g2forge::app
