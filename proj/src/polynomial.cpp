#include "g2forge/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "g2forge/errors.hpp"

namespace g2forge {

bool variable_less(std::string_view a, std::string_view b) {
  auto split = [](std::string_view s) {
    std::size_t i = s.size();
    while (i > 0 && std::isdigit(static_cast<unsigned char>(s[i - 1]))) --i;
    return std::pair{s.substr(0, i), s.substr(i)};
  };
  auto [pa, na] = split(a);
  auto [pb, nb] = split(b);
  if (pa != pb) return pa < pb;
  if (na.size() != nb.size()) return na.size() < nb.size();
  return na < nb;
}

Polynomial::Polynomial(const Rational& constant) {
  if (constant != 0) terms_.emplace(Exponents{}, constant);
}

Polynomial::Polynomial(std::vector<std::string> vars, Terms terms) : vars_(std::move(vars)), terms_(std::move(terms)) {
  prune();
}

Polynomial Polynomial::variable(const std::string& name) {
  if (name.empty()) throw ParseError("empty variable name", 0);
  Terms t;
  t.emplace(Exponents{1}, Rational(1));
  return Polynomial({name}, std::move(t));
}

std::optional<Rational> Polynomial::constant_value() const {
  if (!is_constant()) return std::nullopt;
  if (terms_.empty()) return Rational(0);
  return terms_.begin()->second;
}

int Polynomial::total_degree() const {
  int best = terms_.empty() ? -1 : 0;
  for (const auto& [e, c] : terms_) {
    int d = 0;
    for (auto x : e) d += x;
    best = std::max(best, d);
  }
  return best;
}

int Polynomial::degree_in(std::string_view name) const {
  auto it = std::find(vars_.begin(), vars_.end(), name);
  if (it == vars_.end()) return 0;
  std::size_t idx = static_cast<std::size_t>(it - vars_.begin());
  int best = 0;
  for (const auto& [e, c] : terms_) best = std::max(best, static_cast<int>(e[idx]));
  return best;
}

bool Polynomial::is_homogeneous_in(std::string_view name, int degree) const {
  auto it = std::find(vars_.begin(), vars_.end(), name);
  if (it == vars_.end()) return degree == 0 || terms_.empty();
  std::size_t idx = static_cast<std::size_t>(it - vars_.begin());
  for (const auto& [e, c] : terms_)
    if (e[idx] != degree) return false;
  return true;
}

void Polynomial::prune() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second == 0)
      it = terms_.erase(it);
    else
      ++it;
  }
  std::vector<bool> used(vars_.size(), false);
  for (const auto& [e, c] : terms_)
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) used[i] = true;
  if (std::all_of(used.begin(), used.end(), [](bool u) { return u; })) return;
  std::vector<std::string> vars;
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (used[i]) vars.push_back(vars_[i]);
  Terms terms;
  for (const auto& [e, c] : terms_) {
    Exponents ne;
    ne.reserve(vars.size());
    for (std::size_t i = 0; i < e.size(); ++i)
      if (used[i]) ne.push_back(e[i]);
    terms.emplace(std::move(ne), c);
  }
  vars_ = std::move(vars);
  terms_ = std::move(terms);
}

Polynomial Polynomial::aligned_to(const std::vector<std::string>& vars) const {
  if (vars == vars_) return *this;
  std::vector<std::size_t> where(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i)
    where[i] = static_cast<std::size_t>(std::find(vars.begin(), vars.end(), vars_[i]) - vars.begin());
  Polynomial out;
  out.vars_ = vars;
  for (const auto& [e, c] : terms_) {
    Exponents ne(vars.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) ne[where[i]] = e[i];
    out.terms_.emplace(std::move(ne), c);
  }
  return out;
}

namespace {

std::vector<std::string> merge_variables(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  if (a == b) return a;
  std::vector<std::string> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out),
                 [](const std::string& x, const std::string& y) { return variable_less(x, y); });
  return out;
}

}  // namespace

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (other.terms_.empty()) return *this;
  auto vars = merge_variables(vars_, other.vars_);
  if (vars != vars_) *this = aligned_to(vars);
  const Polynomial& rhs = other.vars_ == vars ? other : other.aligned_to(vars);
  for (const auto& [e, c] : rhs.terms_) {
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  prune();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) { return *this += -other; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.terms_.empty() || b.terms_.empty()) return Polynomial();
  auto vars = merge_variables(a.vars_, b.vars_);
  Polynomial lhs = a.aligned_to(vars);
  Polynomial rhs = b.aligned_to(vars);
  Polynomial out;
  out.vars_ = vars;
  Polynomial::Exponents e(vars.size());
  for (const auto& [ea, ca] : lhs.terms_) {
    for (const auto& [eb, cb] : rhs.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = static_cast<std::uint16_t>(ea[i] + eb[i]);
      auto [it, inserted] = out.terms_.try_emplace(e, ca * cb);
      if (!inserted) it->second += ca * cb;
    }
  }
  out.prune();
  return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) { return *this = *this * other; }

Polynomial Polynomial::pow(unsigned exponent) const {
  Polynomial result(Rational(1));
  Polynomial base = *this;
  while (exponent > 0) {
    if (exponent & 1u) result *= base;
    exponent >>= 1u;
    if (exponent > 0) base *= base;
  }
  return result;
}

Polynomial Polynomial::divide_exact(const Polynomial& divisor) const {
  auto c = divisor.constant_value();
  if (!c) throw NotRepresentable("polynomial division by non-constant '" + divisor.to_string() + "'");
  if (*c == 0) throw DivisionByZero();
  Polynomial out = *this;
  for (auto& [e, coeff] : out.terms_) coeff /= *c;
  return out;
}

Rational Polynomial::eval(const std::map<std::string, Rational>& assignment) const {
  std::vector<Rational> values;
  values.reserve(vars_.size());
  for (const auto& v : vars_) {
    auto it = assignment.find(v);
    if (it == assignment.end()) throw MissingVariable(v);
    values.push_back(it->second);
  }
  Rational sum = 0;
  for (const auto& [e, c] : terms_) {
    Rational term = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (unsigned k = 0; k < e[i]; ++k) term *= values[i];
    sum += term;
  }
  return sum;
}

double Polynomial::eval(const std::map<std::string, double>& assignment) const {
  std::vector<double> values;
  values.reserve(vars_.size());
  for (const auto& v : vars_) {
    auto it = assignment.find(v);
    if (it == assignment.end()) throw MissingVariable(v);
    values.push_back(it->second);
  }
  double sum = 0;
  for (const auto& [e, c] : terms_) {
    double term = to_double(c);
    for (std::size_t i = 0; i < e.size(); ++i) term *= std::pow(values[i], e[i]);
    sum += term;
  }
  return sum;
}

Polynomial Polynomial::specialize(const std::map<std::string, Rational>& assignment) const {
  Polynomial out;
  for (const auto& [e, c] : terms_) {
    Polynomial term(c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      auto it = assignment.find(vars_[i]);
      Polynomial factor = it != assignment.end() ? Polynomial(it->second) : Polynomial::variable(vars_[i]);
      term *= factor.pow(e[i]);
    }
    out += term;
  }
  return out;
}

std::optional<Polynomial> Polynomial::sqrt() const {
  if (terms_.empty()) return Polynomial();
  const auto& [lead_exp, lead_coeff] = *terms_.begin();
  auto root_coeff = exact_sqrt(lead_coeff);
  if (!root_coeff) return std::nullopt;
  Exponents root_exp(lead_exp.size());
  for (std::size_t i = 0; i < lead_exp.size(); ++i) {
    if (lead_exp[i] % 2 != 0) return std::nullopt;
    root_exp[i] = static_cast<std::uint16_t>(lead_exp[i] / 2);
  }
  Polynomial root;
  root.vars_ = vars_;
  root.terms_.emplace(root_exp, *root_coeff);
  const Rational twice_lead = 2 * *root_coeff;
  // Each step peels the leading term of the remainder; the bound only guards
  // pathological inputs, perfect squares finish in at most size() steps.
  for (std::size_t step = 0; step <= 4 * terms_.size() + 8; ++step) {
    Polynomial rest = *this - root * root;
    if (rest.is_zero()) return root;
    rest = rest.aligned_to(vars_);
    if (rest.vars_ != vars_) return std::nullopt;
    const auto& [re, rc] = *rest.terms_.begin();
    Exponents te(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (re[i] < root_exp[i]) return std::nullopt;
      te[i] = static_cast<std::uint16_t>(re[i] - root_exp[i]);
    }
    if (!(te < root.terms_.rbegin()->first)) return std::nullopt;
    Polynomial term;
    term.vars_ = vars_;
    term.terms_.emplace(te, rc / twice_lead);
    root = root.aligned_to(vars_) + term;
    root = root.aligned_to(vars_);
  }
  return std::nullopt;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Rational mag = abs(c);
    bool negative = c.sign() < 0;
    if (first)
      out << (negative ? "-" : "");
    else
      out << (negative ? " - " : " + ");
    first = false;
    bool has_vars = std::any_of(e.begin(), e.end(), [](auto x) { return x != 0; });
    bool wrote = false;
    if (mag != 1 || !has_vars) {
      out << g2forge::to_string(mag);
      wrote = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (wrote) out << '*';
      out << vars_[i];
      if (e[i] > 1) out << '^' << e[i];
      wrote = true;
    }
  }
  return out.str();
}

namespace {

class PolynomialParser {
 public:
  explicit PolynomialParser(std::string_view text) : text_(text) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'", pos_);
  }
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool starts_factor(char ch) const {
    return std::isdigit(static_cast<unsigned char>(ch)) || std::isalpha(static_cast<unsigned char>(ch)) || ch == '(' ||
           ch == '.';
  }

  Polynomial expr() {
    Polynomial acc;
    bool first = true;
    for (;;) {
      char ch = peek();
      bool negative = false;
      if (ch == '+' || ch == '-') {
        negative = ch == '-';
        ++pos_;
      } else if (!first) {
        break;
      }
      Polynomial t = term();
      acc += negative ? -t : t;
      first = false;
      ch = peek();
      if (ch != '+' && ch != '-') break;
    }
    return acc;
  }

  Polynomial term() {
    Polynomial acc = power();
    for (;;) {
      char ch = peek();
      if (ch == '*') {
        ++pos_;
        acc *= power();
      } else if (ch == '/') {
        ++pos_;
        Polynomial d = power();
        if (!d.is_constant()) fail("division by a non-constant");
        if (d.is_zero()) fail("division by zero");
        acc = acc.divide_exact(d);
      } else if (starts_factor(ch)) {
        acc *= power();
      } else {
        break;
      }
    }
    return acc;
  }

  Polynomial power() {
    Polynomial base = atom();
    if (peek() == '^') {
      ++pos_;
      skip_space();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      base = base.pow(static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start)))));
    }
    return base;
  }

  Polynomial atom() {
    char ch = peek();
    if (ch == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (ch == '-') {
      ++pos_;
      return -power();
    }
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
        ++pos_;
      try {
        return Polynomial(parse_rational(text_.substr(start, pos_ - start)));
      } catch (const ParseError&) {
        pos_ = start;
        fail("malformed number");
      }
    }
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      std::size_t start = pos_++;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return Polynomial::variable(std::string(text_.substr(start, pos_ - start)));
    }
    fail(ch == '\0' ? "unexpected end of input" : "unexpected character");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text) { return PolynomialParser(text).parse(); }

}  // namespace g2forge
