#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "g2forge/liealg.hpp"

namespace g2forge {

struct CatalogAlgebra {
  std::string name;
  std::string equations;    // structure equations in the tuple grammar
  std::string description;
  bool half_flat_row;        // one of the 24 nilpotent algebras with half-flat structures
};

/// Builtin algebras: the 24 six-dimensional nilpotent algebras admitting
/// half-flat SU(3)-structures ("n4" ... "n34"), the nilsoliton frame of n9,
/// the Einstein extension "s28" of n28 and the one-parameter hyperbolic family.
const std::vector<CatalogAlgebra>& algebra_catalog();
const CatalogAlgebra& catalog_algebra(std::string_view name);
AnyAlgebra load_algebra(std::string_view name_or_equations, std::optional<Ring> ring = std::nullopt,
                        double tol = kDefaultTolerance);

struct CatalogForm {
  std::string name;
  int dim;
  std::string text;
  std::string description;
};

/// Named forms used by the worked examples (standard G2 form, the coupled
/// pairs on n28 and n9, the G2 forms on the two solvable extensions).
const std::vector<CatalogForm>& form_catalog();
const CatalogForm& catalog_form(std::string_view name);

/// Named form, or a form parsed from text when no name matches.
KForm<Scalar> load_form(std::string_view name_or_text, int dim, int default_degree);

}  // namespace g2forge
