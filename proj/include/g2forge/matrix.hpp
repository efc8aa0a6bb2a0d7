#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include "g2forge/errors.hpp"
#include "g2forge/scalar.hpp"

namespace g2forge {

template <class T>
using Vector = std::vector<T>;

/// Small dense row-major matrix over one of the coefficient rings.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, from_int<T>(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = from_int<T>(1);
    return m;
  }
  static Matrix diagonal(const std::vector<T>& d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vector<T> column(std::size_t j) const {
    Vector<T> v;
    v.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
    return v;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  T trace() const {
    T t = from_int<T>(0);
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t = t + (*this)(i, i);
    return t;
  }

  template <class F>
  auto map(F f) const -> Matrix<std::decay_t<decltype(f(std::declval<const T&>()))>> {
    using U = std::decay_t<decltype(f(std::declval<const T&>()))>;
    Matrix<U> out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(i, j) = f((*this)(i, j));
    return out;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] = data_[k] + o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] = data_[k] - o.data_[k];
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(const T& s, Matrix m) {
    for (auto& x : m.data_) x = s * x;
    return m;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product shape mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) = out(i, j) + aik * b(k, j);
      }
    return out;
  }
  friend Vector<T> operator*(const Matrix& a, const Vector<T>& v) {
    if (a.cols_ != v.size()) throw DimensionMismatch("matrix-vector shape mismatch");
    Vector<T> out(a.rows_, from_int<T>(0));
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) out[i] = out[i] + a(i, k) * v[k];
    return out;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  bool approx_equals(const Matrix& o, double tol = kDefaultTolerance) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (std::size_t k = 0; k < data_.size(); ++k)
      if (!near_zero(data_[k] - o.data_[k], tol)) return false;
    return true;
  }
  bool near_zero_matrix(double tol = kDefaultTolerance) const {
    return std::all_of(data_.begin(), data_.end(), [tol](const T& x) { return near_zero(x, tol); });
  }

 private:
  void check_same(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

namespace detail {

/// Row index to pivot on in column c among rows [from, rows), or nullopt.
template <class T>
std::optional<std::size_t> choose_pivot(const Matrix<T>& m, std::size_t from, std::size_t c, double tol) {
  if constexpr (std::is_same_v<T, double>) {
    std::optional<std::size_t> best;
    double best_mag = tol;
    for (std::size_t r = from; r < m.rows(); ++r) {
      double mag = std::abs(m(r, c));
      if (mag > best_mag) {
        best_mag = mag;
        best = r;
      }
    }
    return best;
  } else if constexpr (std::is_same_v<T, Polynomial>) {
    bool saw_nonconstant = false;
    for (std::size_t r = from; r < m.rows(); ++r) {
      const auto& x = m(r, c);
      if (x.is_zero()) continue;
      if (x.is_constant()) return r;
      saw_nonconstant = true;
    }
    if (saw_nonconstant)
      throw NotRepresentable("elimination over polynomials needs a constant pivot in column " + std::to_string(c));
    return std::nullopt;
  } else {
    for (std::size_t r = from; r < m.rows(); ++r)
      if (!is_zero(m(r, c))) return r;
    return std::nullopt;
  }
}

}  // namespace detail

template <class T>
struct Elimination {
  Matrix<T> reduced;                 // reduced row echelon form
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
  int swaps = 0;
};

/// Gauss-Jordan elimination to reduced row echelon form. For floats, entries
/// of magnitude <= tol are treated as zero.
template <class T>
Elimination<T> row_reduce(Matrix<T> m, double tol = kDefaultTolerance) {
  Elimination<T> out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    auto p = detail::choose_pivot(m, r, c, tol);
    if (!p) {
      if constexpr (std::is_same_v<T, double>)
        for (std::size_t i = r; i < m.rows(); ++i) m(i, c) = 0.0;
      continue;
    }
    if (*p != r) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(*p, j));
      ++out.swaps;
    }
    T pivot = m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = divide(m(r, j), pivot);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || is_zero(m(i, c))) continue;
      T factor = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) = m(i, j) - factor * m(r, j);
      if constexpr (std::is_same_v<T, double>) m(i, c) = 0.0;
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.reduced = std::move(m);
  return out;
}

template <class T>
std::size_t rank(const Matrix<T>& m, double tol = kDefaultTolerance) {
  return row_reduce(m, tol).pivots.size();
}

/// Basis of {x : m x = 0}; one vector per free column, with that free
/// variable set to 1 and the other free variables to 0.
template <class T>
std::vector<Vector<T>> nullspace(const Matrix<T>& m, double tol = kDefaultTolerance) {
  auto e = row_reduce(m, tol);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<Vector<T>> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vector<T> v(m.cols(), from_int<T>(0));
    v[f] = from_int<T>(1);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// A solution of a x = b with free variables set to zero, or nullopt when
/// the system is inconsistent (beyond tol for floats).
template <class T>
std::optional<Vector<T>> solve(const Matrix<T>& a, const Vector<T>& b, double tol = kDefaultTolerance) {
  if (b.size() != a.rows()) throw DimensionMismatch("right-hand side length mismatch");
  Matrix<T> aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  auto e = row_reduce(aug, tol);
  if (!e.pivots.empty() && e.pivots.back() == a.cols()) return std::nullopt;
  if constexpr (std::is_same_v<T, Polynomial>) {
    // a non-constant entry left in the augmented column of a zero row means
    // the system is inconsistent for generic parameter values
    for (std::size_t r = e.pivots.size(); r < a.rows(); ++r)
      if (!e.reduced(r, a.cols()).is_zero()) return std::nullopt;
  }
  Vector<T> x(a.cols(), from_int<T>(0));
  for (std::size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = e.reduced(r, a.cols());
  return x;
}

template <class T>
Matrix<T> inverse(const Matrix<T>& a, double tol = kDefaultTolerance) {
  if (a.rows() != a.cols()) throw DimensionMismatch("inverse of a non-square matrix");
  const std::size_t n = a.rows();
  Matrix<T> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = from_int<T>(1);
  }
  auto e = row_reduce(aug, tol);
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) throw DivisionByZero("matrix is singular");
  Matrix<T> inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  return inv;
}

template <class T>
T determinant(Matrix<T> m, double tol = kDefaultTolerance) {
  if (m.rows() != m.cols()) throw DimensionMismatch("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  T det = from_int<T>(1);
  for (std::size_t c = 0; c < n; ++c) {
    auto p = detail::choose_pivot(m, c, c, tol);
    if (!p) return from_int<T>(0);
    if (*p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(c, j), m(*p, j));
      det = -det;
    }
    det = det * m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (is_zero(m(i, c))) continue;
      T factor = divide(m(i, c), m(c, c));
      for (std::size_t j = c; j < n; ++j) m(i, j) = m(i, j) - factor * m(c, j);
    }
  }
  return det;
}

template <class T>
bool is_symmetric(const Matrix<T>& m, double tol = kDefaultTolerance) {
  if (m.rows() != m.cols()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      if (!near_zero(m(i, j) - m(j, i), tol)) return false;
  return true;
}

/// Positive definiteness of a symmetric matrix by symmetric elimination: all
/// pivots must be strictly positive. Undecidable signs raise NotRepresentable.
template <class T>
bool positive_definite(Matrix<T> m, double tol = kDefaultTolerance) {
  if (!is_symmetric(m, tol)) return false;
  const std::size_t n = m.rows();
  for (std::size_t c = 0; c < n; ++c) {
    auto s = sign_of(m(c, c), tol);
    if (!s) throw NotRepresentable("sign of pivot '" + to_string(m(c, c)) + "' is undecidable");
    if (*s <= 0) return false;
    for (std::size_t i = c + 1; i < n; ++i) {
      if (is_zero(m(i, c))) continue;
      T factor = divide(m(i, c), m(c, c));
      for (std::size_t j = c; j < n; ++j) m(i, j) = m(i, j) - factor * m(c, j);
    }
  }
  return true;
}

template <class T>
std::string to_string(const Matrix<T>& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s += i ? ", [" : "[";
    for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? ", " : "") + to_string(m(i, j));
    s += "]";
  }
  return s + "]";
}

}  // namespace g2forge
