#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace g2forge {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;
using Rational =
    boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;

/// Accepts "p", "p/q" and plain decimals such as "-0.125"; the result is exact.
Rational parse_rational(std::string_view text);

/// Canonical rendering: "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);

inline int sign(const Rational& q) { return q.sign(); }
inline double to_double(const Rational& q) { return q.convert_to<double>(); }

/// Exact n-th root when numerator and denominator are perfect n-th powers.
std::optional<Rational> exact_root(const Rational& q, unsigned n);
inline std::optional<Rational> exact_sqrt(const Rational& q) { return exact_root(q, 2); }

/// Best rational approximation with denominator at most max_den (continued
/// fractions). Used to turn float witnesses into exact ones.
Rational rationalize(double x, long max_den = 1000000);

}  // namespace g2forge
