#pragma once

#include <optional>
#include <vector>

#include "g2forge/liealg.hpp"
#include "g2forge/matrix.hpp"

namespace g2forge {

/// Levi-Civita connection of a left-invariant metric: nabla_{e_i} e_j = sum_k gamma(i, j, k) e_k.
template <Coefficient T>
class Connection {
 public:
  Connection() = default;
  explicit Connection(int n) : n_(n), gamma_(static_cast<std::size_t>(n * n * n), from_int<T>(0)) {}
  int dim() const { return n_; }
  T& operator()(int i, int j, int k) { return gamma_[(i * n_ + j) * n_ + k]; }
  const T& operator()(int i, int j, int k) const { return gamma_[(i * n_ + j) * n_ + k]; }
  Vector<T> nabla(int i, int j) const {
    Vector<T> v(n_);
    for (int k = 0; k < n_; ++k) v[k] = (*this)(i, j, k);
    return v;
  }
  /// Matrix of nabla_{e_i}: column j holds nabla_{e_i} e_j.
  Matrix<T> operator_of(int i) const {
    Matrix<T> m(n_, n_);
    for (int j = 0; j < n_; ++j)
      for (int k = 0; k < n_; ++k) m(k, j) = (*this)(i, j, k);
    return m;
  }

 private:
  int n_ = 0;
  std::vector<T> gamma_;
};

namespace detail {

template <Coefficient T>
T pair(const Matrix<T>& g, const Vector<T>& x, const Vector<T>& y) {
  T s = from_int<T>(0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (is_zero(x[i])) continue;
    for (std::size_t j = 0; j < y.size(); ++j)
      if (!is_zero(y[j]) && !is_zero(g(i, j))) s = s + x[i] * g(i, j) * y[j];
  }
  return s;
}

}  // namespace detail

/// Koszul formula on left-invariant fields:
/// 2<nabla_X Y, Z> = <[X,Y],Z> - <[Y,Z],X> + <[Z,X],Y>.
template <Coefficient T>
Connection<T> levi_civita(const MetricLieAlgebra<T>& M) {
  const auto& L = M.algebra();
  const auto& g = M.metric();
  const int n = L.dim();
  const double tol = L.tolerance();
  Matrix<T> ginv = inverse(g, tol);
  auto basis = detail::standard_basis<T>(n);
  const T half = from_rational<T>(Rational(1) / 2);
  Connection<T> out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Vector<T> low(n);
      for (int l = 0; l < n; ++l)
        low[l] = half * (detail::pair(g, L.bracket(i, j), basis[l]) - detail::pair(g, L.bracket(j, l), basis[i]) +
                         detail::pair(g, L.bracket(l, i), basis[j]));
      auto up = ginv * low;
      for (int k = 0; k < n; ++k) out(i, j, k) = up[k];
    }
  return out;
}

template <Coefficient T>
struct CurvatureTensors {
  int n = 0;
  std::vector<T> riemann;  // R_ijkl = <R(e_i, e_j) e_k, e_l>
  Matrix<T> ricci;         // Ric(e_j, e_k) = tr(X -> R(X, e_j) e_k)
  T scal;                  // tr(g^{-1} Ric)

  const T& R(int i, int j, int k, int l) const { return riemann[((i * n + j) * n + k) * n + l]; }
};

/// R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z on the basis.
template <Coefficient T>
CurvatureTensors<T> curvature_tensors(const MetricLieAlgebra<T>& M) {
  const auto& L = M.algebra();
  const auto& g = M.metric();
  const int n = L.dim();
  auto conn = levi_civita(M);
  std::vector<Matrix<T>> A;
  for (int i = 0; i < n; ++i) A.push_back(conn.operator_of(i));
  CurvatureTensors<T> out;
  out.n = n;
  out.riemann.assign(static_cast<std::size_t>(n * n * n * n), from_int<T>(0));
  out.ricci = Matrix<T>(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      Matrix<T> r = A[i] * A[j] - A[j] * A[i];
      const auto& b = L.bracket(i, j);
      for (int m = 0; m < n; ++m)
        if (!is_zero(b[m])) r = r - b[m] * A[m];
      Matrix<T> lowered = r.transpose() * g;  // (k, l) -> <R(e_i,e_j) e_k, e_l>
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) out.riemann[((i * n + j) * n + k) * n + l] = lowered(k, l);
      // Ric(e_j, e_k) += e^i(R(e_i, e_j) e_k)
      for (int k = 0; k < n; ++k) out.ricci(j, k) = out.ricci(j, k) + r(i, k);
    }
  out.scal = (inverse(g, L.tolerance()) * out.ricci).trace();
  return out;
}

/// lambda with Ric = lambda g, if any.
template <Coefficient T>
std::optional<T> einstein_check(const MetricLieAlgebra<T>& M, const CurvatureTensors<T>& C) {
  T lambda = divide(C.scal, from_int<T>(M.dim()));
  if ((C.ricci - lambda * M.metric()).near_zero_matrix(M.algebra().tolerance())) return lambda;
  return std::nullopt;
}

template <Coefficient T>
std::optional<T> einstein_check(const MetricLieAlgebra<T>& M) {
  return einstein_check(M, curvature_tensors(M));
}

template <Coefficient T>
struct Nilsoliton {
  T c;
  Matrix<T> D;  // derivation with Ric = c I + D (Ricci operator g^{-1} Ric)
};

/// Solves Ric = c I + D with D in the derivation algebra. Unknowns are the
/// coordinates of D in derivation_space followed by c, so when the identity
/// is itself a derivation the returned witness has c = 0.
template <Coefficient T>
std::optional<Nilsoliton<T>> nilsoliton_check(const MetricLieAlgebra<T>& M, const CurvatureTensors<T>& C) {
  const auto& L = M.algebra();
  const int n = L.dim();
  const double tol = L.tolerance();
  Matrix<T> ric = inverse(M.metric(), tol) * C.ricci;
  auto basis = derivation_space(L);
  const std::size_t m = basis.size();
  Matrix<T> a(static_cast<std::size_t>(n * n), m + 1);
  Vector<T> rhs(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::size_t row = i * n + j;
      for (std::size_t b = 0; b < m; ++b) a(row, b) = basis[b](i, j);
      if (i == j) a(row, m) = from_int<T>(1);
      rhs[row] = ric(i, j);
    }
  auto x = solve(a, rhs, tol);
  if (!x) return std::nullopt;
  Nilsoliton<T> out{(*x)[m], Matrix<T>(n, n)};
  for (std::size_t b = 0; b < m; ++b) out.D = out.D + (*x)[b] * basis[b];
  // residual check guards the float ring against tolerance-induced false positives
  Matrix<T> residual = ric - out.c * Matrix<T>::identity(n) - out.D;
  if (!residual.near_zero_matrix(tol)) return std::nullopt;
  if (!is_derivation(L, out.D, tol)) return std::nullopt;
  return out;
}

template <Coefficient T>
std::optional<Nilsoliton<T>> nilsoliton_check(const MetricLieAlgebra<T>& M) {
  return nilsoliton_check(M, curvature_tensors(M));
}

}  // namespace g2forge
