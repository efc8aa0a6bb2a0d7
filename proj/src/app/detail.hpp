#pragma once

#include <cmath>
#include <string>
#include <variant>
#include <vector>

#include "g2forge/app.hpp"
#include "g2forge/catalog.hpp"

namespace g2forge::app::detail {

template <class T>
json scalar(const T& x) {
  return to_string(x);
}

template <class T>
json matrix(const Matrix<T>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class T>
json form(const KForm<T>& f) {
  return render(f);
}

template <class T>
json optional_scalar(const std::optional<T>& x) {
  return x ? scalar(*x) : json(nullptr);
}

/// Collects assertions for a report.
class Assertions {
 public:
  void add(const std::string& name, bool passed, json expected = nullptr, json computed = nullptr,
           const std::string& detail = "") {
    json a = {{"name", name}, {"passed", passed}};
    if (!expected.is_null()) a["expected"] = std::move(expected);
    if (!computed.is_null()) a["computed"] = std::move(computed);
    if (!detail.empty()) a["detail"] = detail;
    list_.push_back(std::move(a));
  }
  const json& list() const { return list_; }
  bool all() const {
    for (const auto& a : list_)
      if (!a["passed"].get<bool>()) return false;
    return true;
  }

 private:
  json list_ = json::array();
};

/// The ring an analysis runs in, from the rings the inputs need and the
/// user's choice.
Ring choose_ring(const std::vector<Ring>& needed, RingChoice choice);

std::string ring_label(Ring r);

/// Ring the named algebra or structure equations need on their own.
Ring natural_ring(const std::string& algebra);

template <class T>
KForm<T> load_form_as(const std::string& name_or_text, int dim, int degree) {
  return load_form(name_or_text, dim, degree).map([](const Scalar& s) { return convert<T>(s); });
}

template <class T>
T load_scalar_as(const std::string& text) {
  return convert<T>(parse_scalar(text));
}

template <class T>
Matrix<T> load_matrix_as(const std::string& text) {
  return parse_matrix(text).map([](const Scalar& s) { return convert<T>(s); });
}

/// Visits the algebra loaded in ring r with the coefficient type as template
/// argument.
template <class F>
auto with_ring(Ring r, F&& f) {
  switch (r) {
    case Ring::rational:
      return f(Rational{});
    case Ring::polynomial:
      return f(Polynomial{});
    case Ring::float64:
      break;
  }
  return f(double{});
}

template <class T>
LieAlgebra<T> load_algebra_as(const std::string& algebra, double tol) {
  Ring r = std::is_same_v<T, Rational> ? Ring::rational
           : std::is_same_v<T, Polynomial> ? Ring::polynomial
                                           : Ring::float64;
  return std::get<LieAlgebra<T>>(load_algebra(algebra, r, tol));
}

/// 1-based e-index rendering of a basis vector list, e.g. "e1".
std::string vector_name(int i);

json provenance(const Options& opts, Ring ring);

}  // namespace g2forge::app::detail
