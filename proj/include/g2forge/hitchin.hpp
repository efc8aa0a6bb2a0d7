#pragma once

#include <optional>

#include "g2forge/errors.hpp"
#include "g2forge/exterior.hpp"
#include "g2forge/liealg.hpp"
#include "g2forge/matrix.hpp"

namespace g2forge {

/// Vector w with i_w(vol) = gamma for a 5-form gamma on a 6-dimensional space,
/// vol = v e^123456.
template <Coefficient T>
Vector<T> five_form_to_vector(const KForm<T>& gamma, const Orientation<T>& orient) {
  if (gamma.dim() != 6 || gamma.degree() != 5) throw DegreeError("expected a 5-form in dimension 6");
  Vector<T> w(6, from_int<T>(0));
  const IndexSet all = IndexSet::from_mask(0x3f);
  for (int m = 0; m < 6; ++m) {
    // i_{e_m} e^123456 = (-1)^m e^{1..m^..6} (0-based m)
    T c = gamma.coeff(all.without(m));
    if (is_zero(c)) continue;
    c = divide(c, orient.volume);
    w[m] = m % 2 ? -c : c;
  }
  return w;
}

/// Matrix of K_sigma: w -> A((i_w sigma) ^ sigma), column j = K e_j.
template <Coefficient T>
Matrix<T> k_endomorphism(const KForm<T>& sigma, const Orientation<T>& orient = Orientation<T>::standard()) {
  if (sigma.dim() != 6 || sigma.degree() != 3) throw DegreeError("K_sigma needs a 3-form in dimension 6");
  Matrix<T> k(6, 6);
  for (int j = 0; j < 6; ++j) {
    auto w = five_form_to_vector(wedge(contract_basis(j, sigma), sigma), orient);
    for (int i = 0; i < 6; ++i) k(i, j) = w[i];
  }
  return k;
}

/// lambda(sigma) = tr(K_sigma^2) / 6. Quartic in sigma; works symbolically.
template <Coefficient T>
T hitchin_lambda(const KForm<T>& sigma, const Orientation<T>& orient = Orientation<T>::standard()) {
  auto k = k_endomorphism(sigma, orient);
  return divide((k * k).trace(), from_int<T>(6));
}

/// J_sigma = K_sigma / sqrt(|lambda|), defined when lambda < 0.
template <Coefficient T>
Matrix<T> almost_complex(const KForm<T>& sigma, const Orientation<T>& orient = Orientation<T>::standard(),
                         double tol = kDefaultTolerance) {
  auto k = k_endomorphism(sigma, orient);
  T lambda = divide((k * k).trace(), from_int<T>(6));
  auto s = sign_of(lambda, tol);
  if (!s) throw NotRepresentable("sign of lambda(sigma) = " + to_string(lambda) + " is undecidable");
  if (*s >= 0) throw NotStable("lambda(sigma) = " + to_string(lambda) + " is not negative");
  auto root = root_of(-lambda, 2);
  if (!root) throw NotRepresentable("sqrt(|lambda|) = sqrt(" + to_string(-lambda) + ") is not representable");
  return divide(from_int<T>(1), *root) * k;
}

/// Omega(a, b) = omega(e_a, e_b).
template <Coefficient T>
Matrix<T> two_form_matrix(const KForm<T>& omega) {
  if (omega.degree() != 2) throw DegreeError("expected a 2-form");
  const int n = omega.dim();
  Matrix<T> m(n, n);
  for (const auto& [idx, c] : omega.terms()) {
    auto ij = idx.indices();
    m(ij[0], ij[1]) = c;
    m(ij[1], ij[0]) = -c;
  }
  return m;
}

enum class PairCheck {
  strict,   // omega ^ sigma must vanish
  lenient,  // compatibility is reported, not enforced
};

/// Stable pair (omega, sigma) on a 6-dimensional space with its induced data.
template <Coefficient T>
struct StablePair {
  KForm<T> omega;
  KForm<T> sigma;
  Orientation<T> orientation;  // sign of omega^3 with unit magnitude
  T lambda;
  Matrix<T> J;
  Matrix<T> h;                 // h(x, y) = omega(J x, y)
  bool compatible = false;     // omega ^ sigma = 0
  bool normalized = false;     // J^*sigma ^ sigma = (2/3) omega^3
  bool type_11 = false;        // omega(J., J.) = omega
  bool symmetric = false;      // h symmetric
  std::optional<bool> positive;  // h positive definite; absent when undecidable
};

/// Builds J_sigma and h = omega(J., .). The volume form defining K_sigma
/// carries the orientation induced by omega^3 unless one is supplied.
template <Coefficient T>
StablePair<T> metric_from_pair(const KForm<T>& omega, const KForm<T>& sigma, PairCheck check = PairCheck::strict,
                               std::optional<Orientation<T>> orient = std::nullopt, double tol = kDefaultTolerance) {
  if (omega.dim() != 6 || sigma.dim() != 6) throw DimensionMismatch("SU(3) pairs live in dimension 6");
  if (omega.degree() != 2 || sigma.degree() != 3) throw DegreeError("expected a 2-form and a 3-form");
  StablePair<T> p;
  p.omega = omega;
  p.sigma = sigma;
  KForm<T> omega3 = power(omega, 3);
  T vol = omega3.scalar_value();
  auto vol_sign = sign_of(vol, tol);
  if (!vol_sign) throw NotRepresentable("sign of omega^3 is undecidable");
  if (*vol_sign == 0) throw NotStable("omega^3 = 0");
  p.orientation = orient.value_or(Orientation<T>{from_int<T>(*vol_sign)});
  p.compatible = wedge(omega, sigma).near_zero(tol);
  if (check == PairCheck::strict && !p.compatible)
    throw IncompatiblePair("omega ^ sigma = " + render(wedge(omega, sigma)) + " is not zero");
  p.lambda = hitchin_lambda(sigma, p.orientation);
  p.J = almost_complex(sigma, p.orientation, tol);
  Matrix<T> big_omega = two_form_matrix(omega);
  p.h = p.J.transpose() * big_omega;
  p.symmetric = is_symmetric(p.h, tol);
  p.type_11 = (p.J.transpose() * big_omega * p.J).approx_equals(big_omega, tol);
  KForm<T> lhs = wedge(pullback(p.J, sigma), sigma);
  KForm<T> rhs = from_rational<T>(Rational(2) / 3) * omega3;
  p.normalized = lhs.approx_equals(rhs, tol);
  if (p.symmetric) {
    try {
      p.positive = positive_definite(p.h, tol);
    } catch (const NotRepresentable&) {
      p.positive.reset();
    }
  } else {
    p.positive = false;
  }
  return p;
}

template <Coefficient T>
struct SU3Predicates {
  std::optional<T> coupled;  // c with d omega = c sigma, c != 0
  bool half_flat = false;    // d(omega^2) = 0 and d sigma = 0
};

/// The unique c with a = c b, if it exists.
template <Coefficient T>
std::optional<T> proportionality(const KForm<T>& a, const KForm<T>& b, double tol = kDefaultTolerance) {
  if (b.near_zero(tol)) return std::nullopt;
  // largest coefficient of b as the reference keeps the float ring stable
  auto ref = b.terms().begin();
  if constexpr (std::is_same_v<T, double>) {
    for (auto it = b.terms().begin(); it != b.terms().end(); ++it)
      if (std::abs(it->second) > std::abs(ref->second)) ref = it;
  } else if constexpr (std::is_same_v<T, Polynomial>) {
    for (auto it = b.terms().begin(); it != b.terms().end(); ++it)
      if (it->second.is_constant()) {
        ref = it;
        break;
      }
  }
  T c;
  try {
    c = divide(a.coeff(ref->first), ref->second);
  } catch (const NotRepresentable&) {
    return std::nullopt;
  }
  if (!(a - c * b).near_zero(tol)) return std::nullopt;
  return c;
}

template <Coefficient T>
SU3Predicates<T> su3_predicates(const KForm<T>& omega, const KForm<T>& sigma, const LieAlgebra<T>& L,
                                double tol = kDefaultTolerance) {
  if (L.dim() != 6) throw DimensionMismatch("SU(3) predicates need a 6-dimensional algebra");
  SU3Predicates<T> out;
  KForm<T> domega = L.differential(omega);
  if (auto c = proportionality(domega, sigma, tol); c && !near_zero(*c, tol)) out.coupled = c;
  out.half_flat = L.differential(wedge(omega, omega)).near_zero(tol) && L.differential(sigma).near_zero(tol);
  return out;
}

template <Coefficient T>
SU3Predicates<T> su3_predicates(const StablePair<T>& p, const LieAlgebra<T>& L, double tol = kDefaultTolerance) {
  return su3_predicates(p.omega, p.sigma, L, tol);
}

}  // namespace g2forge
