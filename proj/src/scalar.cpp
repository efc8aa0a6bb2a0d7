#include "g2forge/scalar.hpp"

#include <charconv>

namespace g2forge {

std::string to_string(double x) {
  if (!std::isfinite(x)) return x != x ? "nan" : (x > 0 ? "inf" : "-inf");
  char buf[512];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::fixed);
  if (ec != std::errc{}) return std::to_string(x);
  return std::string(buf, end);
}

std::string to_string(Ring ring) {
  switch (ring) {
    case Ring::rational:
      return "rational";
    case Ring::polynomial:
      return "polynomial";
    case Ring::float64:
      return "float64";
  }
  return "unknown";
}

Rational divide(const Rational& a, const Rational& b) {
  if (b == 0) throw DivisionByZero();
  return a / b;
}

Polynomial divide(const Polynomial& a, const Polynomial& b) { return a.divide_exact(b); }

double divide(double a, double b) {
  if (b == 0.0) throw DivisionByZero();
  return a / b;
}

std::optional<int> sign_of(const Polynomial& x, double /*tol*/) {
  auto c = x.constant_value();
  if (!c) return std::nullopt;
  return c->sign();
}

std::optional<Polynomial> root_of(const Polynomial& x, unsigned n) {
  auto c = x.constant_value();
  if (c) {
    auto r = exact_root(*c, n);
    if (!r) return std::nullopt;
    return Polynomial(*r);
  }
  if (n == 2) return x.sqrt();
  return std::nullopt;
}

std::optional<double> root_of(double x, unsigned n) {
  if (n == 0) return std::nullopt;
  if (x < 0) {
    if (n % 2 == 0) return std::nullopt;
    return -std::pow(-x, 1.0 / n);
  }
  if (n == 2) return std::sqrt(x);
  return std::pow(x, 1.0 / n);
}

double to_double(const Polynomial& x) {
  auto c = x.constant_value();
  if (!c) throw NotRepresentable("non-constant polynomial '" + x.to_string() + "' has no float value");
  return to_double(*c);
}

const Rational& Scalar::rational() const {
  if (auto* q = std::get_if<Rational>(&value_)) return *q;
  throw RingMismatch("scalar is not rational: " + to_string());
}

const Polynomial& Scalar::polynomial() const {
  if (auto* p = std::get_if<Polynomial>(&value_)) return *p;
  throw RingMismatch("scalar is not a polynomial: " + to_string());
}

double Scalar::float64() const {
  if (auto* x = std::get_if<double>(&value_)) return *x;
  throw RingMismatch("scalar is not a float: " + to_string());
}

Ring join(Ring a, Ring b) {
  if (a == b) return a;
  if (a == Ring::rational) return b;
  if (b == Ring::rational) return a;
  throw RingMismatch("cannot combine " + g2forge::to_string(a) + " and " + g2forge::to_string(b) + " scalars");
}

Scalar Scalar::to_ring(Ring target) const {
  Ring from = ring();
  if (from == target) return *this;
  switch (from) {
    case Ring::rational:
      if (target == Ring::polynomial) return Scalar(Polynomial(rational()));
      return Scalar(g2forge::to_double(rational()));
    case Ring::polynomial:
      if (auto c = polynomial().constant_value()) return Scalar(*c).to_ring(target);
      break;
    case Ring::float64:
      break;
  }
  throw RingMismatch("cannot convert " + g2forge::to_string(from) + " scalar " + to_string() + " to " +
                     g2forge::to_string(target));
}

namespace {

template <class Op>
Scalar combine(const Scalar& a, const Scalar& b, Op op) {
  Ring r = join(a.ring(), b.ring());
  Scalar x = a.to_ring(r);
  Scalar y = b.to_ring(r);
  switch (r) {
    case Ring::rational:
      return Scalar(op(x.rational(), y.rational()));
    case Ring::polynomial:
      return Scalar(op(x.polynomial(), y.polynomial()));
    case Ring::float64:
      return Scalar(op(x.float64(), y.float64()));
  }
  throw RingMismatch("unknown ring");
}

}  // namespace

Scalar Scalar::operator-() const {
  switch (ring()) {
    case Ring::rational:
      return Scalar(Rational(-rational()));
    case Ring::polynomial:
      return Scalar(-polynomial());
    case Ring::float64:
      return Scalar(-float64());
  }
  return *this;
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  return combine(a, b, [](const auto& x, const auto& y) { return decltype(x + y)(x + y); });
}
Scalar operator-(const Scalar& a, const Scalar& b) {
  return combine(a, b, [](const auto& x, const auto& y) { return decltype(x - y)(x - y); });
}
Scalar operator*(const Scalar& a, const Scalar& b) {
  return combine(a, b, [](const auto& x, const auto& y) { return decltype(x * y)(x * y); });
}
Scalar operator/(const Scalar& a, const Scalar& b) {
  return combine(a, b, [](const auto& x, const auto& y) { return divide(x, y); });
}

bool operator==(const Scalar& a, const Scalar& b) {
  Ring r;
  try {
    r = join(a.ring(), b.ring());
  } catch (const RingMismatch&) {
    return false;
  }
  Scalar x = a.to_ring(r);
  Scalar y = b.to_ring(r);
  switch (r) {
    case Ring::rational:
      return x.rational() == y.rational();
    case Ring::polynomial:
      return x.polynomial() == y.polynomial();
    case Ring::float64:
      return x.float64() == y.float64();
  }
  return false;
}

std::string Scalar::to_string() const {
  switch (ring()) {
    case Ring::rational:
      return g2forge::to_string(rational());
    case Ring::polynomial:
      return polynomial().to_string();
    case Ring::float64:
      return g2forge::to_string(float64());
  }
  return "?";
}

bool is_zero(const Scalar& x) {
  switch (x.ring()) {
    case Ring::rational:
      return is_zero(x.rational());
    case Ring::polynomial:
      return is_zero(x.polynomial());
    case Ring::float64:
      return is_zero(x.float64());
  }
  return false;
}

bool near_zero(const Scalar& x, double tol) {
  if (x.ring() == Ring::float64) return near_zero(x.float64(), tol);
  return is_zero(x);
}

Scalar divide(const Scalar& a, const Scalar& b) { return a / b; }

std::optional<int> sign_of(const Scalar& x, double tol) {
  switch (x.ring()) {
    case Ring::rational:
      return sign_of(x.rational(), tol);
    case Ring::polynomial:
      return sign_of(x.polynomial(), tol);
    case Ring::float64:
      return sign_of(x.float64(), tol);
  }
  return std::nullopt;
}

std::optional<Scalar> root_of(const Scalar& x, unsigned n) {
  switch (x.ring()) {
    case Ring::rational:
      if (auto r = root_of(x.rational(), n)) return Scalar(*r);
      return std::nullopt;
    case Ring::polynomial:
      if (auto r = root_of(x.polynomial(), n)) return Scalar(*r);
      return std::nullopt;
    case Ring::float64:
      if (auto r = root_of(x.float64(), n)) return Scalar(*r);
      return std::nullopt;
  }
  return std::nullopt;
}

double to_double(const Scalar& x) {
  switch (x.ring()) {
    case Ring::rational:
      return to_double(x.rational());
    case Ring::polynomial:
      return to_double(x.polynomial());
    case Ring::float64:
      return x.float64();
  }
  return 0;
}

}  // namespace g2forge
