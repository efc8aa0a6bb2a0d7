#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "g2forge/rational.hpp"

namespace g2forge {

/// Orders variable names naturally: alphabetic prefix first, then the numeric
/// suffix as a number, so that a < b1 < b2 < ... < b15 < c.
bool variable_less(std::string_view a, std::string_view b);

/// Multivariate polynomial with rational coefficients in named variables.
///
/// The variable list is kept sorted (variable_less) and minimal: it holds
/// exactly the variables that occur in some term. Terms are stored in
/// descending lexicographic order of their exponent vectors, so the first term
/// is the leading one. Zero coefficients are never stored.
class Polynomial {
 public:
  using Exponents = std::vector<std::uint16_t>;
  using Terms = std::map<Exponents, Rational, std::greater<>>;

  Polynomial() = default;
  Polynomial(const Rational& constant);  // NOLINT: rationals embed implicitly
  Polynomial(long constant) : Polynomial(Rational(constant)) {}  // NOLINT

  static Polynomial variable(const std::string& name);

  const std::vector<std::string>& variables() const { return vars_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return vars_.empty(); }
  /// The value when the polynomial is constant.
  std::optional<Rational> constant_value() const;

  int total_degree() const;
  int degree_in(std::string_view name) const;
  bool is_homogeneous_in(std::string_view name, int degree) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }

  Polynomial pow(unsigned exponent) const;

  /// Division by a nonzero constant polynomial; anything else throws.
  Polynomial divide_exact(const Polynomial& divisor) const;

  /// Full substitution. Every variable that occurs must be assigned.
  Rational eval(const std::map<std::string, Rational>& assignment) const;
  double eval(const std::map<std::string, double>& assignment) const;

  /// Partial substitution; unassigned variables are kept.
  Polynomial specialize(const std::map<std::string, Rational>& assignment) const;

  /// p = q^2 for some polynomial q with rational coefficients, q returned with
  /// a positive leading coefficient.
  std::optional<Polynomial> sqrt() const;

  std::string to_string() const;

 private:
  Polynomial(std::vector<std::string> vars, Terms terms);
  Polynomial aligned_to(const std::vector<std::string>& vars) const;
  void prune();

  std::vector<std::string> vars_;
  Terms terms_;
};

/// Parses expressions such as "4*c^4*b15^2*(-b15*(b12+b13)+b14^2)". Variable
/// names are one letter optionally followed by digits; juxtaposition
/// multiplies ("2b1c" = 2*b1*c); '/' divides by a nonzero constant.
Polynomial parse_polynomial(std::string_view text);

inline std::string to_string(const Polynomial& p) { return p.to_string(); }

}  // namespace g2forge
