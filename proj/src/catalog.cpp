#include "g2forge/catalog.hpp"

namespace g2forge {

const std::vector<CatalogAlgebra>& algebra_catalog() {
  static const std::vector<CatalogAlgebra> entries = {
      {"n4", "(0,0,e12,e13,e14+e23,e24+e15)", "", true},
      {"n6", "(0,0,e12,e13,e23,e14)", "", true},
      {"n7", "(0,0,e12,e13,e23,e14-e25)", "", true},
      {"n8", "(0,0,e12,e13,e23,e14+e25)", "", true},
      {"n9", "(0,0,0,e12,e14-e23,e15+e34)", "", true},
      {"n10", "(0,0,0,e12,e14,e15+e23)", "", true},
      {"n11", "(0,0,0,e12,e14,e15+e23+e24)", "", true},
      {"n12", "(0,0,0,e12,e14,e15+e24)", "", true},
      {"n13", "(0,0,0,e12,e14,e15)", "", true},
      {"n14", "(0,0,0,e12,e13,e14+e35)", "", true},
      {"n15", "(0,0,0,e12,e23,e14+e35)", "", true},
      {"n16", "(0,0,0,e12,e23,e14-e35)", "", true},
      {"n21", "(0,0,0,e12,e13,e14+e23)", "", true},
      {"n22", "(0,0,0,e12,e13,e24)", "", true},
      {"n24", "(0,0,0,e12,e13,e23)", "", true},
      {"n25", "(0,0,0,0,e12,e15+e34)", "", true},
      {"n27", "(0,0,0,0,e12,e14+e25)", "", true},
      {"n28", "(0,0,0,0,e13-e24,e14+e23)", "complex Heisenberg algebra", true},
      {"n29", "(0,0,0,0,e12,e14+e23)", "", true},
      {"n30", "(0,0,0,0,e12,e34)", "", true},
      {"n31", "(0,0,0,0,e12,e13)", "", true},
      {"n32", "(0,0,0,0,0,e12+e34)", "", true},
      {"n33", "(0,0,0,0,0,e12)", "", true},
      {"n34", "(0,0,0,0,0,0)", "abelian", true},
      {"n9-nilsoliton", "(0,0,0,sqrt(5)/2*e12,e14-e23,sqrt(5)/2*e15+e34)",
       "n9 in an orthonormal frame of its nilsoliton metric (float ring)", false},
      {"s28", "(1/2*e17,1/2*e27,1/2*e37,1/2*e47,e13-e24+e57,e14+e23+e67,0)",
       "rank-one Einstein extension of n28 by diag(1/2,1/2,1/2,1/2,1,1)", false},
      {"hyperbolic-a", "(a*e17,a*e27,a*e37,a*e47,a*e57,a*e67,0)",
       "rank-one Einstein extension of the abelian algebra by a*id (symbolic a)", false},
  };
  return entries;
}

const CatalogAlgebra& catalog_algebra(std::string_view name) {
  for (const auto& e : algebra_catalog())
    if (e.name == name) return e;
  throw PreconditionError("unknown algebra '" + std::string(name) + "'");
}

AnyAlgebra load_algebra(std::string_view name_or_equations, std::optional<Ring> ring, double tol) {
  for (const auto& e : algebra_catalog())
    if (e.name == name_or_equations) return parse_any_algebra(e.equations, ring, tol);
  if (name_or_equations.find('(') == std::string_view::npos)
    throw PreconditionError("unknown algebra '" + std::string(name_or_equations) + "'");
  return parse_any_algebra(name_or_equations, ring, tol);
}

const std::vector<CatalogForm>& form_catalog() {
  static const std::vector<CatalogForm> entries = {
      {"phi-std", 7, "e123+e145+e167+e246-e257-e347-e356", "standard G2 3-form"},
      {"n28-omega", 6, "e12+e34-e56", "coupled pair on n28, 2-form"},
      {"n28-sigma", 6, "e136-e145-e235-e246", "coupled pair on n28, 3-form"},
      {"n9-omega", 6, "-3/2*e12-1/4*e14-e15-e24+1/2*e26-1/2*e35-e36+e56", "coupled pair on n9, 2-form"},
      {"n9-sigma", 6,
       "sqrt(15)*sqrt(sqrt(2))/4*e123+sqrt(15)*sqrt(sqrt(2))/8*e234-sqrt(15)*sqrt(sqrt(2))/8*e125+sqrt(15)*sqrt(sqrt(2))/8*e134"
       "+sqrt(15)*sqrt(sqrt(2))/4*e135-sqrt(15)*sqrt(sqrt(2))/4*e146+sqrt(15)*sqrt(sqrt(2))/4*e236+sqrt(15)*sqrt(sqrt(2))/4*e345",
       "coupled pair on n9, 3-form (float ring)"},
      {"s28-phi", 7, "e127+e347-e567+e136-e145-e235-e246", "lcc G2-structure on s28"},
      {"hyperbolic-phi", 7, "-e125-e136-e147+e237-e246+e345-e567", "lcp G2-structure on hyperbolic-a"},
  };
  return entries;
}

const CatalogForm& catalog_form(std::string_view name) {
  for (const auto& e : form_catalog())
    if (e.name == name) return e;
  throw PreconditionError("unknown form '" + std::string(name) + "'");
}

KForm<Scalar> load_form(std::string_view name_or_text, int dim, int default_degree) {
  for (const auto& e : form_catalog())
    if (e.name == name_or_text) {
      if (e.dim != dim)
        throw DimensionMismatch("form '" + e.name + "' lives in dimension " + std::to_string(e.dim));
      return parse_form(e.text, dim, default_degree);
    }
  return parse_form(name_or_text, dim, default_degree);
}

}  // namespace g2forge
