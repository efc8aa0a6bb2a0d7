#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "g2forge/errors.hpp"
#include "g2forge/matrix.hpp"
#include "g2forge/scalar.hpp"

namespace g2forge {

inline constexpr int kMaxDimension = 8;

/// Strictly increasing multi-index i1 < ... < ik, stored as a bit mask over
/// 0-based positions. Ordered lexicographically as a sequence, which is the
/// order e12 < e13 < ... < e56 used for rendering and dense coordinates.
class IndexSet {
 public:
  constexpr IndexSet() = default;
  static constexpr IndexSet from_mask(std::uint32_t mask) {
    IndexSet s;
    s.mask_ = mask;
    return s;
  }
  static IndexSet of(std::initializer_list<int> zero_based) {
    std::uint32_t m = 0;
    for (int i : zero_based) m |= 1u << i;
    return from_mask(m);
  }
  /// Sorts an arbitrary index sequence; returns the set and the permutation
  /// sign, or nullopt if an index repeats.
  static std::optional<std::pair<IndexSet, int>> from_sequence(std::span<const int> zero_based);

  constexpr std::uint32_t mask() const { return mask_; }
  int size() const { return std::popcount(mask_); }
  bool contains(int i) const { return (mask_ >> i) & 1u; }
  bool empty() const { return mask_ == 0; }
  std::vector<int> indices() const;
  IndexSet complement(int dim) const { return from_mask(((1u << dim) - 1u) & ~mask_); }
  IndexSet without(int i) const { return from_mask(mask_ & ~(1u << i)); }
  IndexSet with(int i) const { return from_mask(mask_ | (1u << i)); }

  /// Digits of the 1-based indices, e.g. "123".
  std::string to_string() const;

  friend bool operator==(IndexSet a, IndexSet b) { return a.mask_ == b.mask_; }
  friend bool operator<(IndexSet a, IndexSet b) {
    std::uint32_t x = a.mask_, y = b.mask_;
    while (x && y) {
      int lx = std::countr_zero(x), ly = std::countr_zero(y);
      if (lx != ly) return lx < ly;
      x &= x - 1;
      y &= y - 1;
    }
    return x == 0 && y != 0;
  }

 private:
  std::uint32_t mask_ = 0;
};

/// Sign of e^a ^ e^b relative to e^(a u b); 0 when the sets overlap.
int wedge_sign(IndexSet a, IndexSet b);

/// All k-subsets of {0..n-1} in lexicographic order.
std::vector<IndexSet> subsets(int n, int k);

/// Alternating k-form on an n-dimensional space, n <= 8, with coefficients
/// keyed by increasing multi-indices. Zero coefficients are never stored.
template <Coefficient T>
class KForm {
 public:
  using Terms = std::map<IndexSet, T>;

  KForm() = default;
  KForm(int dim, int degree) : dim_(dim), degree_(degree) {
    if (dim < 0 || dim > kMaxDimension) throw DimensionMismatch("dimension " + std::to_string(dim) + " out of range");
    if (degree < 0 || degree > dim) throw DegreeError("degree " + std::to_string(degree) + " out of range");
  }

  static KForm monomial(int dim, IndexSet index, const T& coeff = from_int<T>(1)) {
    KForm f(dim, index.size());
    f.add(index, coeff);
    return f;
  }
  static KForm constant(int dim, const T& value) {
    KForm f(dim, 0);
    f.add(IndexSet{}, value);
    return f;
  }
  /// e^(i+1) for 0-based i.
  static KForm coframe(int dim, int i) { return monomial(dim, IndexSet::of({i})); }
  static KForm one_form(int dim, const Vector<T>& coeffs) {
    KForm f(dim, 1);
    for (int i = 0; i < dim; ++i) f.add(IndexSet::of({i}), coeffs.at(i));
    return f;
  }
  /// Coordinates in the lexicographic basis of all k-subsets.
  static KForm from_dense(int dim, int degree, const Vector<T>& coords) {
    KForm f(dim, degree);
    auto basis = subsets(dim, degree);
    if (coords.size() != basis.size()) throw DimensionMismatch("dense coordinate length mismatch");
    for (std::size_t i = 0; i < basis.size(); ++i) f.add(basis[i], coords[i]);
    return f;
  }

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  T coeff(IndexSet index) const {
    auto it = terms_.find(index);
    return it == terms_.end() ? from_int<T>(0) : it->second;
  }
  /// The value of a 0-form, or the e^(1..n) coefficient of a top form.
  T scalar_value() const {
    if (degree_ != 0 && degree_ != dim_) throw DegreeError("scalar_value needs degree 0 or top degree");
    return terms_.empty() ? from_int<T>(0) : terms_.begin()->second;
  }

  void add(IndexSet index, const T& value) {
    if (index.size() != degree_) throw DegreeError("multi-index of the wrong length");
    if (index.mask() >> dim_) throw DimensionMismatch("multi-index exceeds the dimension");
    if (g2forge::is_zero(value)) return;
    auto [it, inserted] = terms_.try_emplace(index, value);
    if (!inserted) {
      it->second = it->second + value;
      if (g2forge::is_zero(it->second)) terms_.erase(it);
    }
  }

  Vector<T> dense() const {
    auto basis = subsets(dim_, degree_);
    Vector<T> out;
    out.reserve(basis.size());
    for (auto b : basis) out.push_back(coeff(b));
    return out;
  }

  bool is_zero() const { return terms_.empty(); }
  bool near_zero(double tol = kDefaultTolerance) const {
    for (const auto& [k, v] : terms_)
      if (!g2forge::near_zero(v, tol)) return false;
    return true;
  }

  KForm operator-() const {
    KForm out(dim_, degree_);
    for (const auto& [k, v] : terms_) out.terms_.emplace(k, -v);
    return out;
  }
  KForm& operator+=(const KForm& o) {
    check_same(o);
    for (const auto& [k, v] : o.terms_) add(k, v);
    return *this;
  }
  KForm& operator-=(const KForm& o) {
    check_same(o);
    for (const auto& [k, v] : o.terms_) add(k, -v);
    return *this;
  }
  friend KForm operator+(KForm a, const KForm& b) { return a += b; }
  friend KForm operator-(KForm a, const KForm& b) { return a -= b; }
  friend KForm operator*(const T& s, const KForm& f) {
    KForm out(f.dim_, f.degree_);
    for (const auto& [k, v] : f.terms_) out.add(k, s * v);
    return out;
  }
  friend bool operator==(const KForm& a, const KForm& b) {
    return a.dim_ == b.dim_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }
  bool approx_equals(const KForm& o, double tol = kDefaultTolerance) const { return (*this - o).near_zero(tol); }

  template <class F>
  auto map(F f) const -> KForm<std::decay_t<decltype(f(std::declval<const T&>()))>> {
    KForm<std::decay_t<decltype(f(std::declval<const T&>()))>> out(dim_, degree_);
    for (const auto& [k, v] : terms_) out.add(k, f(v));
    return out;
  }

  /// The same form viewed in a larger space (extra coframe elements unused).
  KForm embed(int dim) const {
    if (dim < dim_) throw DimensionMismatch("cannot embed into a smaller dimension");
    KForm out(dim, degree_);
    out.terms_ = terms_;
    return out;
  }

 private:
  void check_same(const KForm& o) const {
    if (dim_ != o.dim_) throw DimensionMismatch("forms of different dimension");
    if (degree_ != o.degree_) throw DegreeError("forms of different degree");
  }

  int dim_ = 0;
  int degree_ = 0;
  Terms terms_;
};

template <Coefficient T>
KForm<T> wedge(const KForm<T>& a, const KForm<T>& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("wedge of forms of different dimension");
  const int n = a.dim();
  if (a.degree() + b.degree() > n) return KForm<T>(n, n);
  KForm<T> out(n, a.degree() + b.degree());
  for (const auto& [i, x] : a.terms()) {
    for (const auto& [j, y] : b.terms()) {
      int s = wedge_sign(i, j);
      if (s == 0) continue;
      T v = x * y;
      out.add(IndexSet::from_mask(i.mask() | j.mask()), s > 0 ? v : -v);
    }
  }
  return out;
}

template <Coefficient T>
KForm<T> power(const KForm<T>& a, int k) {
  KForm<T> out = KForm<T>::constant(a.dim(), from_int<T>(1));
  for (int i = 0; i < k; ++i) out = wedge(out, a);
  return out;
}

/// Interior product with the basis vector e_(i+1).
template <Coefficient T>
KForm<T> contract_basis(int i, const KForm<T>& a) {
  if (a.degree() == 0) throw DegreeError("cannot contract a 0-form");
  KForm<T> out(a.dim(), a.degree() - 1);
  for (const auto& [idx, x] : a.terms()) {
    if (!idx.contains(i)) continue;
    int before = std::popcount(idx.mask() & ((1u << i) - 1u));
    out.add(idx.without(i), before % 2 ? -x : x);
  }
  return out;
}

/// i_X a.
template <Coefficient T>
KForm<T> contract(const Vector<T>& x, const KForm<T>& a) {
  if (static_cast<int>(x.size()) != a.dim()) throw DimensionMismatch("vector and form dimensions differ");
  if (a.degree() == 0) throw DegreeError("cannot contract a 0-form");
  KForm<T> out(a.dim(), a.degree() - 1);
  for (int i = 0; i < a.dim(); ++i) {
    if (is_zero(x[i])) continue;
    out += x[i] * contract_basis(i, a);
  }
  return out;
}

/// Pullback by a linear map: (P^* a)(v1, ..., vk) = a(P v1, ..., P vk), with
/// P acting on column vectors (P e_j = sum_i P(i, j) e_i).
template <Coefficient T>
KForm<T> pullback(const Matrix<T>& p, const KForm<T>& a) {
  const int n = a.dim();
  if (static_cast<int>(p.rows()) != n || static_cast<int>(p.cols()) != n)
    throw DimensionMismatch("pullback matrix shape mismatch");
  std::vector<KForm<T>> rows;
  for (int i = 0; i < n; ++i) {
    Vector<T> r;
    for (int j = 0; j < n; ++j) r.push_back(p(i, j));
    rows.push_back(KForm<T>::one_form(n, r));
  }
  KForm<T> out(n, a.degree());
  for (const auto& [idx, x] : a.terms()) {
    KForm<T> term = KForm<T>::constant(n, x);
    for (int i : idx.indices()) term = wedge(term, rows[i]);
    out += term;
  }
  return out;
}

/// Evaluates a k-form on k vectors.
template <Coefficient T>
T evaluate(const KForm<T>& a, const std::vector<Vector<T>>& vectors) {
  if (static_cast<int>(vectors.size()) != a.degree()) throw DegreeError("wrong number of arguments");
  KForm<T> f = a;
  for (const auto& v : vectors) f = contract(v, f);
  return f.scalar_value();
}

/// Oriented volume v * e^(1..n); v must be nonzero, its sign is the orientation.
template <Coefficient T>
struct Orientation {
  T volume = from_int<T>(1);

  static Orientation standard() { return Orientation{from_int<T>(1)}; }
  static Orientation from_form(const KForm<T>& top) {
    if (top.degree() != top.dim()) throw DegreeError("orientation needs a top-degree form");
    if (top.is_zero()) throw PreconditionError("orientation form is zero");
    return Orientation{top.scalar_value()};
  }
  KForm<T> form(int dim) const {
    return KForm<T>::monomial(dim, IndexSet::from_mask((1u << dim) - 1u), volume);
  }
};

/// Metric data needed on forms: g on vectors, its inverse (the induced inner
/// product on covectors), and optionally an oriented volume compatible with g.
template <Coefficient T>
class FormMetric {
 public:
  /// Orientation taken as +sqrt(det g) when that root is representable.
  explicit FormMetric(Matrix<T> g, double tol = kDefaultTolerance)
      : g_(std::move(g)), ginv_(inverse(g_, tol)), tol_(tol) {
    init();
    if (auto r = root_of(determinant(g_, tol), 2)) orient_ = Orientation<T>{*r};
  }
  FormMetric(Matrix<T> g, Orientation<T> orient, double tol = kDefaultTolerance)
      : g_(std::move(g)), ginv_(inverse(g_, tol)), orient_(std::move(orient)), tol_(tol) {
    init();
    T det = determinant(g_, tol);
    T gap = orient_->volume * orient_->volume - det;
    bool compatible = near_zero(gap, tol);
    if constexpr (std::is_same_v<T, double>) compatible = std::abs(gap) <= tol * std::max(1.0, std::abs(det));
    if (!compatible)
      throw PreconditionError("orientation volume " + to_string(orient_->volume) +
                              " is not compatible with det g = " + to_string(det));
  }

  /// Identity metric with the standard orientation.
  static FormMetric euclidean(int dim) {
    return FormMetric(Matrix<T>::identity(dim), Orientation<T>::standard());
  }

  int dim() const { return static_cast<int>(g_.rows()); }
  const Matrix<T>& metric() const { return g_; }
  const Matrix<T>& inverse_metric() const { return ginv_; }
  bool oriented() const { return orient_.has_value(); }
  const Orientation<T>& orientation() const {
    if (!orient_) throw NotRepresentable("sqrt(det g) is not representable; pass an orientation explicitly");
    return *orient_;
  }
  double tolerance() const { return tol_; }

  /// <e^I, e^J> = det of the (I, J) minor of g^{-1}.
  T monomial_inner(IndexSet i, IndexSet j) const {
    if (diagonal_) {
      if (!(i == j)) return from_int<T>(0);
      T p = from_int<T>(1);
      for (int k : i.indices()) p = p * ginv_(k, k);
      return p;
    }
    auto ri = i.indices();
    auto cj = j.indices();
    Matrix<T> minor(ri.size(), cj.size());
    for (std::size_t a = 0; a < ri.size(); ++a)
      for (std::size_t b = 0; b < cj.size(); ++b) minor(a, b) = ginv_(ri[a], cj[b]);
    if (ri.empty()) return from_int<T>(1);
    return determinant(minor, tol_);
  }

  T inner(const KForm<T>& a, const KForm<T>& b) const {
    if (a.dim() != dim() || b.dim() != dim()) throw DimensionMismatch("form and metric dimensions differ");
    if (a.degree() != b.degree()) throw DegreeError("inner product of forms of different degree");
    T sum = from_int<T>(0);
    for (const auto& [i, x] : a.terms())
      for (const auto& [j, y] : b.terms()) {
        T m = monomial_inner(i, j);
        if (!is_zero(m)) sum = sum + x * y * m;
      }
    return sum;
  }

  T norm_squared(const KForm<T>& a) const { return inner(a, a); }

  /// Defined by a ^ *b = <a, b> vol for all a of the same degree as b.
  KForm<T> star(const KForm<T>& b) const {
    const int n = dim();
    if (b.dim() != n) throw DimensionMismatch("form and metric dimensions differ");
    const int k = b.degree();
    const T& volume = orientation().volume;
    KForm<T> out(n, n - k);
    for (const auto& [j, y] : b.terms()) {
      for (IndexSet i : candidates(j, k)) {
        T m = monomial_inner(i, j);
        if (is_zero(m)) continue;
        IndexSet c = i.complement(n);
        int s = wedge_sign(i, c);
        T v = volume * m * y;
        out.add(c, s > 0 ? v : -v);
      }
    }
    return out;
  }

 private:
  void init() {
    if (!is_symmetric(g_, tol_)) throw PreconditionError("metric is not symmetric");
    diagonal_ = true;
    for (std::size_t i = 0; i < g_.rows(); ++i)
      for (std::size_t j = 0; j < g_.cols(); ++j)
        if (i != j && !is_zero(ginv_(i, j))) diagonal_ = false;
  }
  std::vector<IndexSet> candidates(IndexSet j, int k) const {
    if (diagonal_) return {j};
    return subsets(dim(), k);
  }

  Matrix<T> g_;
  Matrix<T> ginv_;
  std::optional<Orientation<T>> orient_;
  double tol_;
  bool diagonal_ = false;
};

template <Coefficient T>
T form_inner(const KForm<T>& a, const KForm<T>& b, const Matrix<T>& g) {
  return FormMetric<T>(g).inner(a, b);
}

template <Coefficient T>
KForm<T> hodge_star(const KForm<T>& a, const Matrix<T>& g, const Orientation<T>& orient) {
  return FormMetric<T>(g, orient).star(a);
}

/// delta = (-1)^(n(k+1)+1) * d * on k-forms, for any differential d.
template <Coefficient T, class Differential>
KForm<T> codifferential(const KForm<T>& a, Differential&& d, const FormMetric<T>& metric) {
  const int n = a.dim();
  const int k = a.degree();
  if (k == 0) return KForm<T>(n, 0);
  KForm<T> out = metric.star(d(metric.star(a)));
  return ((n * (k + 1) + 1) % 2) ? -out : out;
}

/// Compact text such as "e123+e145-1/2*e17"; "0" for the zero form.
template <Coefficient T>
std::string render(const KForm<T>& f);

std::string render_coefficient_prefix(const std::string& coeff_text, bool atomic, bool first, bool is_one,
                                      bool negative);

template <Coefficient T>
std::string render(const KForm<T>& f) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [idx, c] : f.terms()) {
    std::string text = to_string(c);
    bool negative = false;
    bool atomic = true;
    bool is_one = false;
    if constexpr (std::is_same_v<T, Polynomial>) {
      atomic = c.size() == 1;
      if (atomic && !text.empty() && text[0] == '-') {
        negative = true;
        text = (-c).to_string();
      }
    } else if constexpr (std::is_same_v<T, Scalar>) {
      atomic = c.ring() != Ring::polynomial || c.polynomial().size() == 1;
      if (atomic && !text.empty() && text[0] == '-') {
        negative = true;
        text = (-c).to_string();
      }
    } else {
      if (!text.empty() && text[0] == '-') {
        negative = true;
        text = text.substr(1);
      }
    }
    is_one = text == "1";
    std::string mono = idx.empty() ? "" : "e" + idx.to_string();
    if (idx.empty()) {
      // 0-form: coefficient only
      out += render_coefficient_prefix(text, atomic, first, false, negative);
      if (!out.empty() && out.back() == '*') out.pop_back();
    } else {
      out += render_coefficient_prefix(text, atomic, first, is_one, negative) + mono;
    }
    first = false;
  }
  return out;
}

}  // namespace g2forge
