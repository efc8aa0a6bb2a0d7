#include "g2forge/rational.hpp"

#include <cctype>
#include <cmath>

#include "g2forge/errors.hpp"

namespace g2forge {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  return true;
}

std::optional<Integer> exact_integer_root(const Integer& z, unsigned n) {
  if (z.sign() < 0) {
    if (n % 2 == 0) return std::nullopt;
    auto r = exact_integer_root(-z, n);
    if (!r) return std::nullopt;
    return Integer(-*r);
  }
  Integer root;
  if (mpz_root(root.backend().data(), z.backend().data(), n) == 0) return std::nullopt;
  return root;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw ParseError("malformed rational '" + std::string(text) + "'", 0);
    std::string n_text(num), d_text(den);
    n_text.erase(0, std::min(n_text.find_first_not_of('0'), n_text.size() - 1));
    d_text.erase(0, std::min(d_text.find_first_not_of('0'), d_text.size() - 1));
    Integer d{d_text};
    if (d == 0) throw DivisionByZero("zero denominator in '" + std::string(text) + "'");
    value = Rational(Integer{n_text}, d);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto whole = s.substr(0, dot);
    auto frac = s.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) ||
        (whole.empty() && frac.empty()))
      throw ParseError("malformed decimal '" + std::string(text) + "'", 0);
    Integer scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    std::string all = std::string(whole) + std::string(frac);
    // leading zeros would select octal in the string constructor
    all.erase(0, std::min(all.find_first_not_of('0'), all.size() - 1));
    if (all.empty()) all = "0";
    Integer digits{all};
    value = Rational(digits, scale);
  } else {
    if (!all_digits(s)) throw ParseError("malformed integer '" + std::string(text) + "'", 0);
    std::string all(s);
    all.erase(0, std::min(all.find_first_not_of('0'), all.size() - 1));
    value = Rational(Integer{all});
  }
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

std::optional<Rational> exact_root(const Rational& q, unsigned n) {
  if (n == 0) return std::nullopt;
  auto num = exact_integer_root(numerator(q), n);
  if (!num) return std::nullopt;
  auto den = exact_integer_root(denominator(q), n);
  if (!den) return std::nullopt;
  return Rational(*num, *den);
}

Rational rationalize(double x, long max_den) {
  if (!std::isfinite(x)) throw NotRepresentable("cannot rationalize a non-finite value");
  long long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double r = x;
  for (int iter = 0; iter < 64; ++iter) {
    double a = std::floor(r);
    long long ai = static_cast<long long>(a);
    long long h2 = ai * h1 + h0;
    long long k2 = ai * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    double frac = r - a;
    if (frac < 1e-15) break;
    r = 1.0 / frac;
  }
  return Rational(Integer(h1), Integer(k1));
}

}  // namespace g2forge
