#pragma once

#include <functional>
#include <map>
#include <utility>

#include "detail.hpp"
#include "g2forge/survey.hpp"

namespace g2forge::app::detail {

/// Comparators for scenario expectations: expected text -> (passed, computed).
using Probe = std::function<std::pair<bool, json>(const std::string&)>;
using Probes = std::map<std::string, Probe>;

template <class T>
Probe scalar_probe(const T& value, int dim, double tol) {
  return [value, dim, tol](const std::string& text) {
    T expected = load_scalar_as<T>(text);
    return std::pair<bool, json>{near_zero(expected - value, tol), scalar(value)};
  };
}

template <class T>
Probe form_probe(const KForm<T>& value, double tol) {
  return [value, tol](const std::string& text) {
    auto expected = load_form_as<T>(text, value.dim(), value.degree());
    return std::pair<bool, json>{expected.approx_equals(value, tol), form(value)};
  };
}

template <class T>
Probe matrix_probe(const Matrix<T>& value, double tol) {
  return [value, tol](const std::string& text) {
    auto expected = load_matrix_as<T>(text);
    bool same = expected.rows() == value.rows() && expected.cols() == value.cols() && expected.approx_equals(value, tol);
    return std::pair<bool, json>{same, matrix(value)};
  };
}

inline Probe text_probe(const std::string& value) {
  return [value](const std::string& text) { return std::pair<bool, json>{text == value, value}; };
}

inline Probe bool_probe(bool value) { return text_probe(value ? "true" : "false"); }

template <class T>
json algebra_info(const LieAlgebra<T>& L) {
  json out;
  out["dimension"] = L.dim();
  out["structure_equations"] = render(L);
  json d = json::array();
  for (int k = 0; k < L.dim(); ++k) d.push_back(form(L.d(k)));
  out["differentials"] = d;
  try {
    auto nil = is_nilpotent(L);
    out["nilpotent"] = nil.nilpotent;
    out["nilpotency_step"] = nil.nilpotent ? json(nil.step) : json(nullptr);
    out["lower_central_series"] = nil.series_dimensions;
    out["solvable"] = is_solvable(L);
  } catch (const NotRepresentable&) {
    out["nilpotent"] = nullptr;
    out["solvable"] = nullptr;
  }
  try {
    out["derivation_dimension"] = derivation_space(L).size();
  } catch (const NotRepresentable&) {
    out["derivation_dimension"] = nullptr;
  }
  return out;
}

template <class T>
json su3_results(const LieAlgebra<T>& L, const KForm<T>& omega, const KForm<T>& sigma, bool lenient, double tol,
                 Assertions& checks, Probes* probes) {
  json out;
  StablePair<T> p;
  try {
    p = metric_from_pair(omega, sigma, lenient ? PairCheck::lenient : PairCheck::strict, std::optional<Orientation<T>>{}, tol);
  } catch (const Error& e) {
    checks.add("stable compatible pair", false, nullptr, nullptr, e.what());
    out["error"] = e.what();
    return out;
  }
  auto pred = su3_predicates(p, L, tol);
  out["lambda"] = scalar(p.lambda);
  out["orientation"] = scalar(p.orientation.volume);
  out["J"] = matrix(p.J);
  out["h"] = matrix(p.h);
  out["compatible"] = p.compatible;
  out["normalized"] = p.normalized;
  out["type_11"] = p.type_11;
  out["h_symmetric"] = p.symmetric;
  out["h_positive"] = p.positive ? json(*p.positive) : json(nullptr);
  out["coupled"] = optional_scalar(pred.coupled);
  out["half_flat"] = pred.half_flat;
  checks.add("stable compatible pair", p.compatible);
  checks.add("normalized", p.normalized);
  checks.add("h positive definite", p.positive.value_or(false));
  if (probes) {
    auto& pr = *probes;
    pr["lambda"] = scalar_probe(p.lambda, 6, tol);
    pr["J"] = matrix_probe(p.J, tol);
    pr["h"] = matrix_probe(p.h, tol);
    pr["compatible"] = bool_probe(p.compatible);
    pr["normalized"] = bool_probe(p.normalized);
    pr["positive"] = bool_probe(p.positive.value_or(false));
    pr["half_flat"] = bool_probe(pred.half_flat);
    if (pred.coupled)
      pr["coupled"] = scalar_probe(*pred.coupled, 6, tol);
    else
      pr["coupled"] = text_probe("none");
  }
  return out;
}

template <class T>
json metric_results(const MetricLieAlgebra<T>& M, double tol, Probes* probes) {
  json out;
  auto curv = curvature_tensors(M);
  out["metric"] = matrix(M.metric());
  out["ricci"] = matrix(curv.ricci);
  out["scal"] = scalar(curv.scal);
  auto einstein = einstein_check(M, curv);
  out["einstein"] = einstein ? json{{"is_einstein", true}, {"constant", scalar(*einstein)}}
                             : json{{"is_einstein", false}, {"constant", nullptr}};
  std::optional<Nilsoliton<T>> sol;
  try {
    sol = nilsoliton_check(M, curv);
  } catch (const NotRepresentable& e) {
    out["nilsoliton_error"] = e.what();
  }
  out["nilsoliton"] = sol ? json{{"c", scalar(sol->c)}, {"D", matrix(sol->D)}} : json(nullptr);
  if (probes) {
    auto& pr = *probes;
    const int n = M.dim();
    pr["ricci"] = matrix_probe(curv.ricci, tol);
    pr["scal"] = scalar_probe(curv.scal, n, tol);
    pr["einstein"] = bool_probe(einstein.has_value());
    if (einstein) pr["einstein_constant"] = scalar_probe(*einstein, n, tol);
    pr["nilsoliton"] = bool_probe(sol.has_value());
    if (sol) {
      pr["nilsoliton_c"] = scalar_probe(sol->c, n, tol);
      pr["nilsoliton_D"] = matrix_probe(sol->D, tol);
    }
  }
  return out;
}

template <class T>
json g2_results(const LieAlgebra<T>& L, const KForm<T>& phi, G2Orientation orientation, double tol,
                Assertions& checks, Probes* probes) {
  json out;
  std::optional<G2Structure<T>> built;
  try {
    built = metric_from_phi(phi, tol, orientation);
  } catch (const Error& e) {
    out["positive"] = false;
    out["error"] = e.what();
    checks.add("positive 3-form", false, nullptr, nullptr, e.what());
    if (probes) (*probes)["positive"] = bool_probe(false);
    return out;
  }
  const G2Structure<T>& s = *built;
  checks.add("positive 3-form", true);
  out["positive"] = true;
  out["metric"] = matrix(s.metric);
  out["volume"] = scalar(s.volume.volume);
  out["orientation"] = orientation == G2Orientation::coframe ? "coframe" : "induced";
  out["induced_sign"] = s.induced_sign;
  out["star_phi"] = form(s.star_phi);
  auto t = torsion_forms(L, s);
  out["dphi"] = form(t.dphi);
  out["dstar_phi"] = form(t.dpsi);
  out["torsion"] = {{"tau0", scalar(t.tau0)}, {"tau1", form(t.tau1)}, {"tau2", form(t.tau2)}, {"tau3", form(t.tau3)}};
  out["class"] = to_string(t.torsion_class);
  MetricLieAlgebra<T> M(L, s.metric);
  auto curv = curvature_tensors(M);
  out["scal_ricci"] = scalar(curv.scal);
  std::optional<T> scal_t;
  if (t.torsion_class != TorsionClass::generic) {
    scal_t = scalar_curvature_from_torsion(t, s, L);
    checks.add("scalar curvature from torsion equals trace of Ricci", near_zero(*scal_t - curv.scal, tol),
               scalar(curv.scal), scalar(*scal_t));
  }
  out["scal_torsion"] = optional_scalar(scal_t);
  auto rho = star_ricci(M, s, curv);
  out["star_ricci"] = {{"matrix", matrix(rho.matrix)}, {"trace", scalar(rho.trace)}, {"symmetric", rho.symmetric}};
  out["star_einstein"] = rho.star_einstein;
  json warnings = json::array();
  if (!rho.symmetric) warnings.push_back("star Ricci tensor is not symmetric");
  if (!warnings.empty()) out["warnings"] = warnings;
  if (probes) {
    auto& pr = *probes;
    pr["positive"] = bool_probe(true);
    pr["metric"] = matrix_probe(s.metric, tol);
    pr["star_phi"] = form_probe(s.star_phi, tol);
    pr["dphi"] = form_probe(t.dphi, tol);
    pr["tau0"] = scalar_probe(t.tau0, 7, tol);
    pr["tau1"] = form_probe(t.tau1, tol);
    pr["tau2"] = form_probe(t.tau2, tol);
    pr["tau3"] = form_probe(t.tau3, tol);
    pr["class"] = text_probe(to_string(t.torsion_class));
    pr["scal_ricci"] = scalar_probe(curv.scal, 7, tol);
    if (scal_t) pr["scal_torsion"] = scalar_probe(*scal_t, 7, tol);
    pr["star_ricci"] = matrix_probe(rho.matrix, tol);
    pr["star_einstein"] = bool_probe(rho.star_einstein);
  }
  return out;
}

json survey_row(const SurveyRow& row);
json n4_report(const N4Report& r);
json n9_report(const N9Report& r);

}  // namespace g2forge::app::detail
