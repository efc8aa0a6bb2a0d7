#pragma once

#include <optional>
#include <string>
#include <vector>

#include "g2forge/curvature.hpp"
#include "g2forge/errors.hpp"
#include "g2forge/exterior.hpp"
#include "g2forge/hitchin.hpp"
#include "g2forge/liealg.hpp"

namespace g2forge {

/// B(X, Y) = (1/6) i_X phi ^ i_Y phi ^ phi as top-degree coefficients.
template <Coefficient T>
Matrix<T> b_form(const KForm<T>& phi) {
  if (phi.dim() != 7 || phi.degree() != 3) throw DegreeError("B_phi needs a 3-form in dimension 7");
  std::vector<KForm<T>> ix;
  for (int i = 0; i < 7; ++i) ix.push_back(contract_basis(i, phi));
  const T sixth = from_rational<T>(Rational(1) / 6);
  Matrix<T> b(7, 7);
  for (int i = 0; i < 7; ++i) {
    KForm<T> left = wedge(ix[i], phi);
    for (int j = i; j < 7; ++j) {
      T v = sixth * wedge(ix[j], left).scalar_value();
      b(i, j) = v;
      b(j, i) = v;
    }
  }
  return b;
}

/// Which orientation the Hodge star of a G2-structure uses.
enum class G2Orientation {
  coframe,  // dV is a positive multiple of e^1..7
  induced,  // dV has the sign of det(B_phi)^(1/9)
};

/// A positive 3-form together with its metric, volume and dual 4-form.
template <Coefficient T>
struct G2Structure {
  KForm<T> phi;
  Matrix<T> metric;
  Orientation<T> volume;
  KForm<T> star_phi;
  FormMetric<T> forms;
  int induced_sign = 1;  // +1 when volume agrees with the orientation induced by phi
};

/// g = B det(B)^(-1/9) with the real ninth root, and dV the g-volume form.
/// With the induced orientation dV = det(B)^(1/9) e^1..7, so that
/// g(X, Y) dV = (1/6) i_X phi ^ i_Y phi ^ phi. With the coframe orientation
/// the relation holds up to the sign induced_sign. The relation and
/// |phi|^2 = 7 are re-verified on every call.
template <Coefficient T>
G2Structure<T> metric_from_phi(const KForm<T>& phi, double tol = kDefaultTolerance,
                               G2Orientation orientation = G2Orientation::coframe) {
  Matrix<T> b = b_form(phi);
  // B is definite for a positive 3-form; negative definite means the induced
  // orientation is opposite to e^1..7
  int definite = 0;
  try {
    if (positive_definite(b, tol))
      definite = 1;
    else if (positive_definite(from_int<T>(-1) * b, tol))
      definite = -1;
  } catch (const NotRepresentable&) {
    throw NotRepresentable("definiteness of B_phi is undecidable over this ring");
  }
  if (definite == 0) throw NotPositive("B_phi is not definite; not a G2-structure");
  T det = determinant(b, tol);
  auto r = root_of(definite > 0 ? det : -det, 9);
  if (!r) throw NotRepresentable("det(B_phi)^(1/9) = (" + to_string(det) + ")^(1/9) is not representable");
  Matrix<T> g = divide(from_int<T>(definite), *r) * b;
  int induced_sign = orientation == G2Orientation::induced ? 1 : definite;
  Orientation<T> vol{from_int<T>(definite * induced_sign) * *r};
  FormMetric<T> fm(g, vol, tol);
  KForm<T> vol_form = from_int<T>(induced_sign) * vol.form(7);
  const T sixth = from_rational<T>(Rational(1) / 6);
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) {
      KForm<T> lhs = g(i, j) * vol_form;
      KForm<T> rhs = sixth * wedge(wedge(contract_basis(i, phi), contract_basis(j, phi)), phi);
      if (!lhs.approx_equals(rhs, tol)) throw InconsistentTorsion("defining relation of g_phi fails");
    }
  if (!near_zero(fm.norm_squared(phi) - from_int<T>(7), tol))
    throw InconsistentTorsion("|phi|^2 = " + to_string(fm.norm_squared(phi)) + " instead of 7");
  KForm<T> psi = fm.star(phi);
  return G2Structure<T>{phi, std::move(g), vol, std::move(psi), std::move(fm), induced_sign};
}

namespace detail {

/// Orthogonal projection of a onto span(gens) (gens need not be independent).
template <Coefficient T>
KForm<T> project_onto(const KForm<T>& a, const std::vector<KForm<T>>& gens, const FormMetric<T>& m,
                      Vector<T>* coords = nullptr) {
  const std::size_t k = gens.size();
  Matrix<T> gram(k, k);
  Vector<T> rhs(k);
  for (std::size_t i = 0; i < k; ++i) {
    rhs[i] = m.inner(a, gens[i]);
    for (std::size_t j = i; j < k; ++j) {
      gram(i, j) = m.inner(gens[i], gens[j]);
      gram(j, i) = gram(i, j);
    }
  }
  auto x = solve(gram, rhs, m.tolerance());
  if (!x) throw InconsistentTorsion("projection system is inconsistent");
  KForm<T> out(a.dim(), a.degree());
  for (std::size_t i = 0; i < k; ++i)
    if (!is_zero((*x)[i])) out += (*x)[i] * gens[i];
  if (coords) *coords = *x;
  return out;
}

template <Coefficient T>
std::vector<KForm<T>> lambda2_7(const G2Structure<T>& s) {
  std::vector<KForm<T>> out;
  for (int i = 0; i < 7; ++i) out.push_back(contract_basis(i, s.phi));
  return out;
}

template <Coefficient T>
std::vector<KForm<T>> lambda3_7(const G2Structure<T>& s) {
  std::vector<KForm<T>> out;
  for (int i = 0; i < 7; ++i) out.push_back(contract_basis(i, s.star_phi));
  return out;
}

}  // namespace detail

/// Components of a 2-form (7, 14) or 3-form (1, 7, 27) in the irreducible
/// G2-module decomposition. Unused slots stay empty.
template <Coefficient T>
struct TypeComponents {
  std::optional<KForm<T>> part1;
  KForm<T> part7;
  KForm<T> part14_or_27;
};

template <Coefficient T>
TypeComponents<T> type_project(const KForm<T>& a, const G2Structure<T>& s) {
  const double tol = s.forms.tolerance();
  TypeComponents<T> out;
  if (a.degree() == 2) {
    out.part7 = detail::project_onto(a, detail::lambda2_7(s), s.forms);
    out.part14_or_27 = a - out.part7;
    if (!wedge(out.part14_or_27, s.star_phi).near_zero(tol))
      throw InconsistentTorsion("Lambda^2_14 component fails beta ^ *phi = 0");
    return out;
  }
  if (a.degree() == 3) {
    out.part1 = detail::project_onto(a, {s.phi}, s.forms);
    out.part7 = detail::project_onto(a, detail::lambda3_7(s), s.forms);
    out.part14_or_27 = a - *out.part1 - out.part7;
    if (!wedge(out.part14_or_27, s.phi).near_zero(tol) || !wedge(out.part14_or_27, s.star_phi).near_zero(tol))
      throw InconsistentTorsion("Lambda^3_27 component fails gamma ^ phi = gamma ^ *phi = 0");
    return out;
  }
  throw DegreeError("type decomposition is implemented for degrees 2 and 3");
}

/// Dimensions of Lambda^2_7, Lambda^2_14, Lambda^3_1, Lambda^3_7, Lambda^3_27
/// computed from their defining descriptions.
template <Coefficient T>
std::vector<int> type_dimensions(const G2Structure<T>& s) {
  const double tol = s.forms.tolerance();
  auto rank_of = [&](const std::vector<KForm<T>>& forms) {
    if (forms.empty()) return 0;
    Matrix<T> m(forms.size(), forms.front().dense().size());
    for (std::size_t r = 0; r < forms.size(); ++r) {
      auto d = forms[r].dense();
      for (std::size_t c = 0; c < d.size(); ++c) m(r, c) = d[c];
    }
    return static_cast<int>(rank(m, tol));
  };
  // kernel dimension of the linear map beta -> (beta ^ x for x in targets)
  auto kernel_dim = [&](int degree, const std::vector<KForm<T>>& targets) {
    auto basis = subsets(7, degree);
    std::vector<Vector<T>> columns;
    std::size_t rows = 0;
    for (auto idx : basis) {
      Vector<T> col;
      for (const auto& t : targets) {
        auto d = wedge(KForm<T>::monomial(7, idx), t).dense();
        col.insert(col.end(), d.begin(), d.end());
      }
      rows = col.size();
      columns.push_back(std::move(col));
    }
    Matrix<T> m(rows, basis.size());
    for (std::size_t c = 0; c < basis.size(); ++c)
      for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
    return static_cast<int>(basis.size() - rank(m, tol));
  };
  return {rank_of(detail::lambda2_7(s)), kernel_dim(2, {s.star_phi}), rank_of({s.phi}),
          rank_of(detail::lambda3_7(s)), kernel_dim(3, {s.phi, s.star_phi})};
}

enum class TorsionClass { parallel, calibrated, locally_conformal_parallel, locally_conformal_calibrated, generic };

std::string to_string(TorsionClass c);

template <Coefficient T>
struct TorsionForms {
  T tau0;
  KForm<T> tau1;
  KForm<T> tau2;
  KForm<T> tau3;
  TorsionClass torsion_class = TorsionClass::generic;
  KForm<T> dphi;
  KForm<T> dpsi;
};

/// Solves d phi = tau0 *phi + 3 tau1 ^ phi + *tau3 and
/// d *phi = 4 tau1 ^ *phi + tau2 ^ phi by orthogonal projection.
template <Coefficient T>
TorsionForms<T> torsion_forms(const LieAlgebra<T>& L, const G2Structure<T>& s) {
  if (L.dim() != 7) throw DimensionMismatch("torsion forms need a 7-dimensional algebra");
  const double tol = s.forms.tolerance();
  const auto& m = s.forms;
  TorsionForms<T> out;
  out.dphi = L.differential(s.phi);
  out.dpsi = L.differential(s.star_phi);

  out.tau0 = divide(m.inner(out.dphi, s.star_phi), m.norm_squared(s.star_phi));
  KForm<T> rest = out.dphi - out.tau0 * s.star_phi;

  std::vector<KForm<T>> gens;
  for (int i = 0; i < 7; ++i) gens.push_back(wedge(KForm<T>::coframe(7, i), s.phi));
  Vector<T> x;
  KForm<T> part7 = detail::project_onto(rest, gens, m, &x);
  const T third = from_rational<T>(Rational(1) / 3);
  out.tau1 = KForm<T>(7, 1);
  for (int i = 0; i < 7; ++i) out.tau1.add(IndexSet::of({i}), third * x[i]);

  KForm<T> star_tau3 = rest - part7;
  out.tau3 = m.star(star_tau3);
  if (!wedge(out.tau3, s.phi).near_zero(tol) || !wedge(out.tau3, s.star_phi).near_zero(tol))
    throw InconsistentTorsion("tau3 is not of type 27");

  // tau2: beta ^ phi = d*phi - 4 tau1 ^ *phi, solved over all 2-forms
  KForm<T> target = out.dpsi - from_int<T>(4) * wedge(out.tau1, s.star_phi);
  auto basis2 = subsets(7, 2);
  auto basis5 = subsets(7, 5);
  Matrix<T> a(basis5.size(), basis2.size());
  for (std::size_t c = 0; c < basis2.size(); ++c) {
    auto img = wedge(KForm<T>::monomial(7, basis2[c]), s.phi);
    for (std::size_t r = 0; r < basis5.size(); ++r) a(r, c) = img.coeff(basis5[r]);
  }
  auto beta = solve(a, target.dense(), tol);
  if (!beta) throw InconsistentTorsion("d*phi - 4 tau1 ^ *phi is not of the form tau2 ^ phi");
  out.tau2 = KForm<T>::from_dense(7, 2, *beta);
  if (!wedge(out.tau2, s.star_phi).near_zero(tol)) throw InconsistentTorsion("tau2 is not of type 14");

  bool z0 = near_zero(out.tau0, tol), z1 = out.tau1.near_zero(tol), z2 = out.tau2.near_zero(tol),
       z3 = out.tau3.near_zero(tol);
  if (z0 && z1 && z2 && z3)
    out.torsion_class = TorsionClass::parallel;
  else if (z0 && z1 && z3)
    out.torsion_class = TorsionClass::calibrated;
  else if (z0 && z2 && z3)
    out.torsion_class = TorsionClass::locally_conformal_parallel;
  else if (z0 && z3)
    out.torsion_class = TorsionClass::locally_conformal_calibrated;
  else
    out.torsion_class = TorsionClass::generic;
  return out;
}

template <Coefficient T>
TorsionForms<T> torsion_forms(const LieAlgebra<T>& L, const KForm<T>& phi,
                              G2Orientation orientation = G2Orientation::coframe) {
  return torsion_forms(L, metric_from_phi(phi, L.tolerance(), orientation));
}

/// Scal = 12 delta tau1 + 30 |tau1|^2 - 1/2 |tau2|^2 (tau0 = tau3 = 0), which
/// reduces to -1/2 |tau2|^2 for calibrated structures.
template <Coefficient T>
T scalar_curvature_from_torsion(const TorsionForms<T>& t, const G2Structure<T>& s, const LieAlgebra<T>& L) {
  const auto& m = s.forms;
  T half = from_rational<T>(Rational(1) / 2);
  switch (t.torsion_class) {
    case TorsionClass::parallel:
    case TorsionClass::calibrated:
      return -half * m.norm_squared(t.tau2);
    case TorsionClass::locally_conformal_parallel:
    case TorsionClass::locally_conformal_calibrated: {
      auto d = [&L](const KForm<T>& a) { return L.differential(a); };
      T delta = codifferential(t.tau1, d, m).scalar_value();
      return from_int<T>(12) * delta + from_int<T>(30) * m.norm_squared(t.tau1) - half * m.norm_squared(t.tau2);
    }
    case TorsionClass::generic:
      break;
  }
  throw PreconditionError("scalar curvature formula needs tau0 = tau3 = 0");
}

/// delta tau1 as a scalar.
template <Coefficient T>
T codifferential_of_tau1(const TorsionForms<T>& t, const G2Structure<T>& s, const LieAlgebra<T>& L) {
  auto d = [&L](const KForm<T>& a) { return L.differential(a); };
  return codifferential(t.tau1, d, s.forms).scalar_value();
}

template <Coefficient T>
struct StarRicci {
  Matrix<T> matrix;
  T trace;
  bool symmetric = true;
  bool star_einstein = false;  // traceless part vanishes
};

/// rho*_{sm} = R_ijkl phi_ijs phi_klm with indices raised by the metric.
template <Coefficient T>
StarRicci<T> star_ricci(const MetricLieAlgebra<T>& M, const G2Structure<T>& s, const CurvatureTensors<T>& C) {
  const int n = 7;
  if (M.dim() != n) throw DimensionMismatch("star Ricci needs a 7-dimensional algebra");
  const double tol = M.algebra().tolerance();
  if (!M.metric().approx_equals(s.metric, tol)) throw PreconditionError("g_phi differs from the algebra metric");
  // fully antisymmetric components phi_ijk
  std::vector<T> phi(n * n * n, from_int<T>(0));
  for (const auto& [idx, c] : s.phi.terms()) {
    auto v = idx.indices();
    int perm[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
    for (int p = 0; p < 6; ++p) {
      int i = v[perm[p][0]], j = v[perm[p][1]], k = v[perm[p][2]];
      phi[(i * n + j) * n + k] = p < 3 ? c : -c;
    }
  }
  const Matrix<T>& ginv = s.forms.inverse_metric();
  bool identity = M.metric() == Matrix<T>::identity(n);
  // up(i, j, s) = g^{ii'} g^{jj'} phi_{i'j's}
  std::vector<T> up = phi;
  if (!identity) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int t = 0; t < n; ++t) {
          T sum = from_int<T>(0);
          for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
              const T& p = phi[(a * n + b) * n + t];
              if (!is_zero(p)) sum = sum + ginv(i, a) * ginv(j, b) * p;
            }
          up[(i * n + j) * n + t] = sum;
        }
  }
  StarRicci<T> out;
  out.matrix = Matrix<T>(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const T& r = C.R(i, j, k, l);
          if (is_zero(r)) continue;
          for (int a = 0; a < n; ++a) {
            const T& pa = up[(i * n + j) * n + a];
            if (is_zero(pa)) continue;
            for (int b = 0; b < n; ++b) {
              const T& pb = up[(k * n + l) * n + b];
              if (!is_zero(pb)) out.matrix(a, b) = out.matrix(a, b) + r * pa * pb;
            }
          }
        }
  out.trace = (ginv * out.matrix).trace();
  out.symmetric = is_symmetric(out.matrix, tol);
  Matrix<T> traceless = out.matrix - divide(out.trace, from_int<T>(n)) * M.metric();
  out.star_einstein = traceless.near_zero_matrix(tol);
  return out;
}

template <Coefficient T>
StarRicci<T> star_ricci(const MetricLieAlgebra<T>& M, const G2Structure<T>& s) {
  return star_ricci(M, s, curvature_tensors(M));
}

/// phi = omega ^ e^7 + sigma on a rank-one extension of the algebra carrying
/// the coupled pair.
template <Coefficient T>
struct ProductG2 {
  G2Structure<T> structure;
  T c;                           // d omega = c sigma on the nilpotent factor
  bool sigma_condition = false;  // d sigma = -2c sigma ^ e^7 on the extension
};

template <Coefficient T>
KForm<T> product_form(const KForm<T>& omega, const KForm<T>& sigma) {
  KForm<T> e7 = KForm<T>::coframe(7, 6);
  return wedge(omega.embed(7), e7) + sigma.embed(7);
}

template <Coefficient T>
ProductG2<T> product_g2(const KForm<T>& omega, const KForm<T>& sigma, const LieAlgebra<T>& base,
                        const LieAlgebra<T>& extension, G2Orientation orientation = G2Orientation::coframe) {
  const double tol = extension.tolerance();
  if (base.dim() != 6 || extension.dim() != 7) throw DimensionMismatch("product needs a 6-dimensional base");
  if (!extension.d(6).near_zero(tol)) throw PreconditionError("e^7 is not closed on the extension");
  for (int k = 0; k < 6; ++k) {
    KForm<T> restricted(7, 2);
    for (const auto& [idx, v] : extension.d(k).terms())
      if (!idx.contains(6)) restricted.add(idx, v);
    if (!restricted.approx_equals(base.d(k).embed(7), tol))
      throw PreconditionError("extension does not restrict to the base algebra");
  }
  auto pred = su3_predicates(omega, sigma, base, tol);
  if (!pred.coupled) throw PreconditionError("the pair is not coupled on the base algebra");
  ProductG2<T> out{metric_from_phi(product_form(omega, sigma), tol, orientation), *pred.coupled, false};
  KForm<T> s7 = sigma.embed(7);
  KForm<T> expected = from_int<T>(-2) * out.c * wedge(s7, KForm<T>::coframe(7, 6));
  out.sigma_condition = extension.differential(s7).approx_equals(expected, tol);
  return out;
}

template <Coefficient T>
ProductG2<T> product_g2(const StablePair<T>& pair, const LieAlgebra<T>& base, const LieAlgebra<T>& extension,
                        G2Orientation orientation = G2Orientation::coframe) {
  return product_g2(pair.omega, pair.sigma, base, extension, orientation);
}

}  // namespace g2forge
