#pragma once

#include <cmath>
#include <concepts>
#include <optional>
#include <string>
#include <type_traits>
#include <variant>

#include "g2forge/errors.hpp"
#include "g2forge/polynomial.hpp"
#include "g2forge/rational.hpp"

namespace g2forge {

/// Tolerance used by every float-ring comparison unless a caller passes one.
inline constexpr double kDefaultTolerance = 1e-10;

enum class Ring { rational, polynomial, float64 };

std::string to_string(Ring ring);

// Per-ring primitives. The exact rings ignore tolerances.

inline bool is_zero(const Rational& x) { return x == 0; }
inline bool is_zero(const Polynomial& x) { return x.is_zero(); }
inline bool is_zero(double x) { return x == 0.0; }

inline bool near_zero(const Rational& x, double /*tol*/) { return x == 0; }
inline bool near_zero(const Polynomial& x, double /*tol*/) { return x.is_zero(); }
inline bool near_zero(double x, double tol) { return std::abs(x) <= tol; }

Rational divide(const Rational& a, const Rational& b);
Polynomial divide(const Polynomial& a, const Polynomial& b);
double divide(double a, double b);

/// Sign when it is decidable: always for rationals, for constants only in the
/// polynomial ring, up to tol for floats (0 inside the band).
inline std::optional<int> sign_of(const Rational& x, double /*tol*/ = 0) { return x.sign(); }
std::optional<int> sign_of(const Polynomial& x, double tol = 0);
inline std::optional<int> sign_of(double x, double tol = 0) { return x > tol ? 1 : (x < -tol ? -1 : 0); }

/// Square / n-th roots: exact when representable, nullopt otherwise.
inline std::optional<Rational> root_of(const Rational& x, unsigned n) { return exact_root(x, n); }
std::optional<Polynomial> root_of(const Polynomial& x, unsigned n);
std::optional<double> root_of(double x, unsigned n);

inline double to_double(double x) { return x; }
double to_double(const Polynomial& x);

/// Shortest fixed-notation text that reads back to the same double (never
/// scientific notation, so "2e12" stays unambiguous in the form grammar).
std::string to_string(double x);

template <class T>
struct coefficient_traits;

template <>
struct coefficient_traits<Rational> {
  static constexpr bool exact = true;
  static constexpr Ring ring = Ring::rational;
  static Rational from_rational(const Rational& q) { return q; }
};

template <>
struct coefficient_traits<Polynomial> {
  static constexpr bool exact = true;
  static constexpr Ring ring = Ring::polynomial;
  static Polynomial from_rational(const Rational& q) { return Polynomial(q); }
};

template <>
struct coefficient_traits<double> {
  static constexpr bool exact = false;
  static constexpr Ring ring = Ring::float64;
  static double from_rational(const Rational& q) { return to_double(q); }
};

/// One of the three coefficient rings behind a single value type.
///
/// Binary operations require both operands in the same ring; the only
/// promotions are Rational -> Polynomial and Rational -> Float64. Mixing a
/// polynomial with a float raises RingMismatch.
class Scalar {
 public:
  Scalar() : value_(Rational(0)) {}
  Scalar(const Rational& q) : value_(q) {}  // NOLINT
  Scalar(const Polynomial& p) : value_(p) {}  // NOLINT
  Scalar(double x) : value_(x) {}  // NOLINT
  Scalar(long n) : value_(Rational(n)) {}  // NOLINT
  Scalar(int n) : value_(Rational(n)) {}  // NOLINT

  Ring ring() const { return static_cast<Ring>(value_.index()); }
  const Rational& rational() const;
  const Polynomial& polynomial() const;
  double float64() const;

  /// Explicit conversion. Rational goes anywhere; a constant polynomial comes
  /// back to Rational; Float64 never converts back.
  Scalar to_ring(Ring target) const;
  template <class T>
  T as() const;

  Scalar operator-() const;
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
  Scalar& operator/=(const Scalar& b) { return *this = *this / b; }
  friend bool operator==(const Scalar& a, const Scalar& b);

  std::string to_string() const;

 private:
  std::variant<Rational, Polynomial, double> value_;
};

bool is_zero(const Scalar& x);
bool near_zero(const Scalar& x, double tol);
Scalar divide(const Scalar& a, const Scalar& b);
std::optional<int> sign_of(const Scalar& x, double tol = 0);
std::optional<Scalar> root_of(const Scalar& x, unsigned n);
double to_double(const Scalar& x);
inline std::string to_string(const Scalar& x) { return x.to_string(); }

/// Ring of the combination of a and b under the promotion rules.
Ring join(Ring a, Ring b);

template <>
struct coefficient_traits<Scalar> {
  static constexpr bool exact = false;
  static Scalar from_rational(const Rational& q) { return Scalar(q); }
};

template <>
inline Rational Scalar::as<Rational>() const {
  return to_ring(Ring::rational).rational();
}
template <>
inline Polynomial Scalar::as<Polynomial>() const {
  return to_ring(Ring::polynomial).polynomial();
}
template <>
inline double Scalar::as<double>() const {
  return to_ring(Ring::float64).float64();
}
template <>
inline Scalar Scalar::as<Scalar>() const {
  return *this;
}

template <class T>
concept Coefficient = requires(const T& a, const T& b, double tol) {
  { a + b } -> std::convertible_to<T>;
  { a - b } -> std::convertible_to<T>;
  { a * b } -> std::convertible_to<T>;
  { -a } -> std::convertible_to<T>;
  { is_zero(a) } -> std::same_as<bool>;
  { near_zero(a, tol) } -> std::same_as<bool>;
  { divide(a, b) } -> std::convertible_to<T>;
  { to_string(a) } -> std::convertible_to<std::string>;
  { coefficient_traits<T>::from_rational(Rational{}) } -> std::convertible_to<T>;
};

template <Coefficient T>
T from_rational(const Rational& q) {
  return coefficient_traits<T>::from_rational(q);
}
template <Coefficient T>
T from_int(long n) {
  return coefficient_traits<T>::from_rational(Rational(n));
}

/// Moves a value between coefficient types along the allowed promotions
/// (Rational -> anything; Scalar <-> its alternatives; a constant polynomial
/// down to Rational). Anything else raises RingMismatch.
template <class U, class T>
U convert(const T& x) {
  if constexpr (std::is_same_v<U, T>) {
    return x;
  } else if constexpr (std::is_same_v<T, Rational>) {
    return coefficient_traits<U>::from_rational(x);
  } else if constexpr (std::is_same_v<T, Scalar>) {
    return x.template as<U>();
  } else if constexpr (std::is_same_v<U, Scalar>) {
    return Scalar(x);
  } else {
    return Scalar(x).template as<U>();
  }
}

template <Coefficient T>
bool approx_equal(const T& a, const T& b, double tol = kDefaultTolerance) {
  return near_zero(a - b, tol);
}

}  // namespace g2forge
