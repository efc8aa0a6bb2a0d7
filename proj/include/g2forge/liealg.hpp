#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "g2forge/errors.hpp"
#include "g2forge/exterior.hpp"
#include "g2forge/matrix.hpp"
#include "g2forge/scalar.hpp"

namespace g2forge {

/// Lie algebra given by its coframe differentials (de^1, ..., de^n).
///
/// Brackets and differentials are linked by de^k(X, Y) = -e^k([X, Y]); with
/// de^k = sum_{i<j} a^k_ij e^ij this reads [e_i, e_j] = -sum_k a^k_ij e_k.
/// Construction checks d(de^k) = 0 for every k, which is the Jacobi identity.
template <Coefficient T>
class LieAlgebra {
 public:
  LieAlgebra() = default;
  explicit LieAlgebra(std::vector<KForm<T>> d_coframe, double tol = kDefaultTolerance)
      : d_(std::move(d_coframe)), tol_(tol) {
    const int n = static_cast<int>(d_.size());
    if (n < 1 || n > kMaxDimension) throw DimensionMismatch("algebra dimension " + std::to_string(n) + " out of range");
    for (int k = 0; k < n; ++k) {
      if (d_[k].dim() != n) throw DimensionMismatch("de^" + std::to_string(k + 1) + " lives in the wrong dimension");
      if (d_[k].degree() != 2) throw DegreeError("de^" + std::to_string(k + 1) + " is not a 2-form");
    }
    build_brackets();
    for (int k = 0; k < n; ++k) {
      KForm<T> dd = differential(d_[k]);
      if (!dd.near_zero(tol_))
        throw JacobiViolation("Jacobi identity fails: d(de^" + std::to_string(k + 1) + ") = " + render(dd), k + 1);
    }
  }

  static LieAlgebra abelian(int n) { return LieAlgebra(std::vector<KForm<T>>(n, KForm<T>(n, 2))); }

  int dim() const { return static_cast<int>(d_.size()); }
  double tolerance() const { return tol_; }
  const std::vector<KForm<T>>& d_coframe() const { return d_; }
  const KForm<T>& d(int k) const { return d_.at(k); }

  /// Chevalley-Eilenberg differential: the anti-derivation extending e^k -> de^k.
  KForm<T> differential(const KForm<T>& a) const {
    const int n = dim();
    if (a.dim() != n) throw DimensionMismatch("form and algebra dimensions differ");
    if (a.degree() == n) return KForm<T>(n, n);
    KForm<T> out(n, a.degree() + 1);
    for (const auto& [idx, c] : a.terms()) {
      auto ind = idx.indices();
      for (std::size_t p = 0; p < ind.size(); ++p) {
        const KForm<T>& dk = d_[ind[p]];
        if (dk.is_zero()) continue;
        IndexSet before, after;
        for (std::size_t q = 0; q < p; ++q) before = before.with(ind[q]);
        for (std::size_t q = p + 1; q < ind.size(); ++q) after = after.with(ind[q]);
        for (const auto& [j, x] : dk.terms()) {
          int s1 = wedge_sign(before, j);
          if (s1 == 0) continue;
          IndexSet bj = IndexSet::from_mask(before.mask() | j.mask());
          int s2 = wedge_sign(bj, after);
          if (s2 == 0) continue;
          int s = s1 * s2 * (p % 2 ? -1 : 1);
          T v = c * x;
          out.add(IndexSet::from_mask(bj.mask() | after.mask()), s > 0 ? v : -v);
        }
      }
    }
    return out;
  }

  /// [e_i, e_j] as a coordinate vector (0-based indices).
  const Vector<T>& bracket(int i, int j) const { return brackets_[i * dim() + j]; }

  Vector<T> bracket(const Vector<T>& x, const Vector<T>& y) const {
    const int n = dim();
    Vector<T> out(n, from_int<T>(0));
    for (int i = 0; i < n; ++i) {
      if (is_zero(x[i])) continue;
      for (int j = 0; j < n; ++j) {
        if (i == j || is_zero(y[j])) continue;
        const auto& b = bracket(i, j);
        T xy = x[i] * y[j];
        for (int k = 0; k < n; ++k)
          if (!is_zero(b[k])) out[k] = out[k] + xy * b[k];
      }
    }
    return out;
  }

  /// Matrix of ad(e_i): column j holds [e_i, e_j].
  Matrix<T> ad(int i) const {
    const int n = dim();
    Matrix<T> m(n, n);
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) m(k, j) = bracket(i, j)[k];
    return m;
  }

  bool is_abelian() const {
    for (const auto& f : d_)
      if (!f.near_zero(tol_)) return false;
    return true;
  }

  template <class U>
  LieAlgebra<U> convert_to(double tol = kDefaultTolerance) const {
    std::vector<KForm<U>> out;
    for (const auto& f : d_) out.push_back(f.map([](const T& x) { return convert<U>(x); }));
    return LieAlgebra<U>(std::move(out), tol);
  }

  friend bool operator==(const LieAlgebra& a, const LieAlgebra& b) { return a.d_ == b.d_; }

 private:
  void build_brackets() {
    const int n = dim();
    brackets_.assign(n * n, Vector<T>(n, from_int<T>(0)));
    for (int k = 0; k < n; ++k)
      for (const auto& [idx, a] : d_[k].terms()) {
        auto ij = idx.indices();
        brackets_[ij[0] * n + ij[1]][k] = -a;
        brackets_[ij[1] * n + ij[0]][k] = a;
      }
  }

  std::vector<KForm<T>> d_;
  std::vector<Vector<T>> brackets_;
  double tol_ = kDefaultTolerance;
};

/// Lie algebra with a left-invariant inner product, given by its Gram matrix
/// in the basis (e_1, ..., e_n).
template <Coefficient T>
class MetricLieAlgebra {
 public:
  MetricLieAlgebra(LieAlgebra<T> algebra, Matrix<T> metric) : algebra_(std::move(algebra)), metric_(std::move(metric)) {
    const auto n = static_cast<std::size_t>(algebra_.dim());
    if (metric_.rows() != n || metric_.cols() != n) throw DimensionMismatch("metric shape does not match the algebra");
    if (!positive_definite(metric_, algebra_.tolerance()))
      throw PreconditionError("metric is not symmetric positive definite");
  }
  explicit MetricLieAlgebra(LieAlgebra<T> algebra)
      : MetricLieAlgebra(algebra, Matrix<T>::identity(algebra.dim())) {}

  const LieAlgebra<T>& algebra() const { return algebra_; }
  const Matrix<T>& metric() const { return metric_; }
  int dim() const { return algebra_.dim(); }

 private:
  LieAlgebra<T> algebra_;
  Matrix<T> metric_;
};

// ---------------------------------------------------------------------------
// Structure checks

struct Nilpotency {
  bool nilpotent = false;
  int step = 0;                       // nilpotency step when nilpotent
  std::vector<int> series_dimensions;  // dim of g, [g,g], [g,[g,g]], ...
};

namespace detail {

/// Row-reduced basis (as rows) of the span of the given vectors.
template <Coefficient T>
std::vector<Vector<T>> span_basis(const std::vector<Vector<T>>& vectors, int n, double tol) {
  if (vectors.empty()) return {};
  Matrix<T> m(vectors.size(), n);
  for (std::size_t r = 0; r < vectors.size(); ++r)
    for (int c = 0; c < n; ++c) m(r, c) = vectors[r][c];
  auto e = row_reduce(m, tol);
  std::vector<Vector<T>> out;
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    Vector<T> v(n);
    for (int c = 0; c < n; ++c) v[c] = e.reduced(r, c);
    out.push_back(std::move(v));
  }
  return out;
}

template <Coefficient T>
std::vector<Vector<T>> bracket_span(const LieAlgebra<T>& L, const std::vector<Vector<T>>& a,
                                    const std::vector<Vector<T>>& b) {
  std::vector<Vector<T>> out;
  for (const auto& x : a)
    for (const auto& y : b) out.push_back(L.bracket(x, y));
  return span_basis(out, L.dim(), L.tolerance());
}

template <Coefficient T>
std::vector<Vector<T>> standard_basis(int n) {
  std::vector<Vector<T>> out;
  for (int i = 0; i < n; ++i) {
    Vector<T> v(n, from_int<T>(0));
    v[i] = from_int<T>(1);
    out.push_back(v);
  }
  return out;
}

}  // namespace detail

/// Lower central series g, [g,g], [g,[g,g]], ... until it stabilizes. Over the
/// polynomial ring this needs constant structure constants.
template <Coefficient T>
Nilpotency is_nilpotent(const LieAlgebra<T>& L) {
  const int n = L.dim();
  auto all = detail::standard_basis<T>(n);
  Nilpotency out;
  std::vector<Vector<T>> current = all;
  out.series_dimensions.push_back(n);
  while (!current.empty()) {
    auto next = detail::bracket_span(L, all, current);
    if (next.size() == current.size()) return out;  // stabilized at a nonzero ideal
    out.series_dimensions.push_back(static_cast<int>(next.size()));
    current = std::move(next);
  }
  out.nilpotent = true;
  out.step = static_cast<int>(out.series_dimensions.size()) - 1;
  return out;
}

/// Derived series g, [g,g], [[g,g],[g,g]], ... reaches zero.
template <Coefficient T>
bool is_solvable(const LieAlgebra<T>& L) {
  auto current = detail::standard_basis<T>(L.dim());
  while (!current.empty()) {
    auto next = detail::bracket_span(L, current, current);
    if (next.size() == current.size()) return false;
    current = std::move(next);
  }
  return true;
}

/// D[e_i, e_j] = [D e_i, e_j] + [e_i, D e_j] on all basis pairs, with D acting
/// on column vectors (D e_j = sum_i D(i, j) e_i).
template <Coefficient T>
bool is_derivation(const LieAlgebra<T>& L, const Matrix<T>& D, double tol = kDefaultTolerance) {
  const int n = L.dim();
  if (static_cast<int>(D.rows()) != n || static_cast<int>(D.cols()) != n) throw DimensionMismatch("derivation shape");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      auto lhs = D * L.bracket(i, j);
      auto r1 = L.bracket(D.column(i), detail::standard_basis<T>(n)[j]);
      auto r2 = L.bracket(detail::standard_basis<T>(n)[i], D.column(j));
      for (int k = 0; k < n; ++k)
        if (!near_zero(lhs[k] - r1[k] - r2[k], tol)) return false;
    }
  return true;
}

/// Coefficient matrix of the derivation equations in the unknowns D(i, j),
/// flattened row-major (unknown i * n + j).
template <Coefficient T>
Matrix<T> derivation_equations(const LieAlgebra<T>& L) {
  const int n = L.dim();
  const int pairs = n * (n - 1) / 2;
  Matrix<T> eq(static_cast<std::size_t>(pairs * n), static_cast<std::size_t>(n * n));
  int row = 0;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int k = 0; k < n; ++k, ++row) {
        // sum_m D(k,m) C^m_ab - sum_i D(i,a) C^k_ib - sum_i D(i,b) C^k_ai = 0
        for (int m = 0; m < n; ++m) {
          const T& c = L.bracket(a, b)[m];
          if (!is_zero(c)) eq(row, k * n + m) = eq(row, k * n + m) + c;
        }
        for (int i = 0; i < n; ++i) {
          const T& c1 = L.bracket(i, b)[k];
          if (!is_zero(c1)) eq(row, i * n + a) = eq(row, i * n + a) - c1;
          const T& c2 = L.bracket(a, i)[k];
          if (!is_zero(c2)) eq(row, i * n + b) = eq(row, i * n + b) - c2;
        }
      }
  return eq;
}

/// Basis of the derivation algebra, each element as an n x n matrix.
template <Coefficient T>
std::vector<Matrix<T>> derivation_space(const LieAlgebra<T>& L) {
  const int n = L.dim();
  std::vector<Matrix<T>> out;
  for (const auto& v : nullspace(derivation_equations(L), L.tolerance())) {
    Matrix<T> D(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) D(i, j) = v[i * n + j];
    out.push_back(std::move(D));
  }
  return out;
}

/// Rank-one extension s = n + R e_{n+1} with [e_{n+1}, X] = D X; the new vector
/// is a unit vector orthogonal to n. On the dual side de^k gains
/// sum_i D(k, i) e^{i,n+1} and de^{n+1} = 0.
template <Coefficient T>
MetricLieAlgebra<T> rank_one_extension(const MetricLieAlgebra<T>& M, const Matrix<T>& D) {
  const LieAlgebra<T>& L = M.algebra();
  const int n = L.dim();
  if (n + 1 > kMaxDimension) throw DimensionMismatch("extension exceeds the supported dimension");
  if (!is_derivation(L, D, L.tolerance())) throw NotDerivation("matrix is not a derivation of the algebra");
  std::vector<KForm<T>> d;
  for (int k = 0; k < n; ++k) {
    KForm<T> f = L.d(k).embed(n + 1);
    for (int i = 0; i < n; ++i) f.add(IndexSet::of({i, n}), D(k, i));
    d.push_back(std::move(f));
  }
  d.emplace_back(n + 1, 2);
  Matrix<T> g(n + 1, n + 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = M.metric()(i, j);
  g(n, n) = from_int<T>(1);
  return MetricLieAlgebra<T>(LieAlgebra<T>(std::move(d), L.tolerance()), std::move(g));
}

// ---------------------------------------------------------------------------
// Text formats

/// Parses one form such as "e13-e24", "1/2*e17", "ae17", "b1e12" or
/// "(sqrt(5)/2)e12". Monomials are 'e' followed by 1-based index digits; the
/// digits may come in any order (the sign follows the permutation) and a
/// repeated digit gives zero. Symbols are a letter other than 'e' followed by
/// optional digits and put the coefficient in the polynomial ring; sqrt of a
/// non-square puts it in the float ring. A form with no monomials must be "0";
/// its degree is then default_degree.
KForm<Scalar> parse_form(std::string_view text, int dim, int default_degree = 2);

/// Parses "(de^1, ..., de^n)" without checking Jacobi.
std::vector<KForm<Scalar>> parse_coframe(std::string_view text);

/// Smallest ring that holds every coefficient.
Ring ring_of(const std::vector<KForm<Scalar>>& forms);
Ring ring_of(const KForm<Scalar>& form);

template <class U>
std::vector<KForm<U>> convert_forms(const std::vector<KForm<Scalar>>& forms) {
  std::vector<KForm<U>> out;
  for (const auto& f : forms) out.push_back(f.map([](const Scalar& x) { return x.as<U>(); }));
  return out;
}

/// Parses structure equations into the requested ring and checks Jacobi.
template <class T>
LieAlgebra<T> parse_structure_equations(std::string_view text, double tol = kDefaultTolerance) {
  return LieAlgebra<T>(convert_forms<T>(parse_coframe(text)), tol);
}

/// "(0,0,0,0,e13-e24,e14+e23)".
template <Coefficient T>
std::string render(const LieAlgebra<T>& L) {
  std::string s = "(";
  for (int k = 0; k < L.dim(); ++k) s += (k ? "," : "") + render(L.d(k));
  return s + ")";
}

/// A single coefficient such as "-4", "3*sqrt(2)/2" or "-6*a^2".
Scalar parse_scalar(std::string_view text);

/// Square matrix text "[[1,0],[0,1]]" (entries in the form coefficient grammar).
Matrix<Scalar> parse_matrix(std::string_view text);

/// A Lie algebra in whichever ring its structure constants need.
using AnyAlgebra = std::variant<LieAlgebra<Rational>, LieAlgebra<Polynomial>, LieAlgebra<double>>;

AnyAlgebra parse_any_algebra(std::string_view text, std::optional<Ring> ring = std::nullopt,
                             double tol = kDefaultTolerance);
Ring ring_of(const AnyAlgebra& a);
std::string render(const AnyAlgebra& a);
int dim_of(const AnyAlgebra& a);

}  // namespace g2forge
