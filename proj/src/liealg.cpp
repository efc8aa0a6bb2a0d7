#include "g2forge/liealg.hpp"

#include <cctype>
#include <cmath>

namespace g2forge {

namespace {

struct Term {
  Scalar coeff;
  std::optional<std::vector<int>> monomial;  // 0-based digits as written
  std::size_t offset = 0;
};

class FormParser {
 public:
  explicit FormParser(std::string_view text) : s_(text) {}

  std::vector<Term> top_sum() {
    std::vector<Term> terms;
    skip_ws();
    bool negative = false;
    if (peek() == '+' || peek() == '-') {
      negative = peek() == '-';
      ++pos_;
    }
    while (true) {
      Term t = product(true);
      if (negative) t.coeff = -t.coeff;
      terms.push_back(std::move(t));
      skip_ws();
      if (peek() == '+' || peek() == '-') {
        negative = peek() == '-';
        ++pos_;
        continue;
      }
      return terms;
    }
  }

  Scalar scalar_sum() {
    skip_ws();
    bool negative = false;
    if (peek() == '+' || peek() == '-') {
      negative = peek() == '-';
      ++pos_;
    }
    Scalar total(0);
    while (true) {
      Term t = product(false);
      guarded(t.offset, [&] { total = negative ? total - t.coeff : total + t.coeff; });
      skip_ws();
      if (peek() == '+' || peek() == '-') {
        negative = peek() == '-';
        ++pos_;
        continue;
      }
      return total;
    }
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  std::size_t pos() const { return pos_; }
  bool at_end() {
    skip_ws();
    return pos_ >= s_.size();
  }
  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const { fail_at(what, pos_); }
  [[noreturn]] void fail_at(const std::string& what, std::size_t at) const {
    std::string shown = at < s_.size() ? std::string("'") + s_[at] + "'" : "end of input";
    throw ParseError(what + " at offset " + std::to_string(at) + " (found " + shown + ")", at);
  }

 private:
  template <class F>
  void guarded(std::size_t at, F&& f) {
    try {
      f();
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(std::string(e.what()) + " at offset " + std::to_string(at), at);
    }
  }

  bool starts_factor() const {
    char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '(' ||
           std::isalpha(static_cast<unsigned char>(c));
  }

  Term product(bool allow_monomial) {
    skip_ws();
    Term t;
    t.coeff = Scalar(1);
    t.offset = pos_;
    if (!starts_factor()) fail("expected a term");
    bool first = true;
    while (true) {
      skip_ws();
      bool divide_next = false;
      if (!first) {
        if (peek() == '*') {
          ++pos_;
          skip_ws();
        } else if (peek() == '/') {
          ++pos_;
          skip_ws();
          divide_next = true;
        } else if (!starts_factor()) {
          break;
        }
      }
      first = false;
      std::size_t at = pos_;
      if (peek() == 'e' && pos_ + 1 < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
        if (!allow_monomial) fail("basis monomial not allowed inside a coefficient");
        if (divide_next) fail("cannot divide by a basis monomial");
        if (t.monomial) fail("more than one basis monomial in a term");
        ++pos_;
        std::vector<int> digits;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
          int d = peek() - '0';
          if (d < 1 || d > kMaxDimension) fail("basis index out of range");
          digits.push_back(d - 1);
          ++pos_;
        }
        t.monomial = std::move(digits);
        continue;
      }
      Scalar f = factor();
      skip_ws();
      if (peek() == '^') {
        ++pos_;
        skip_ws();
        std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (start == pos_) fail("expected an integer exponent");
        int e = std::stoi(std::string(s_.substr(start, pos_ - start)));
        Scalar base = f;
        f = Scalar(1);
        for (int i = 0; i < e; ++i) f = f * base;
      }
      guarded(at, [&] { t.coeff = divide_next ? t.coeff / f : t.coeff * f; });
    }
    return t;
  }

  Scalar factor() {
    skip_ws();
    std::size_t at = pos_;
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      while (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.') ++pos_;
      std::string_view lit = s_.substr(at, pos_ - at);
      try {
        return Scalar(parse_rational(lit));
      } catch (const Error&) {
        fail_at("malformed number '" + std::string(lit) + "'", at);
      }
    }
    if (c == '(') {
      ++pos_;
      Scalar v = scalar_sum();
      expect(')');
      return v;
    }
    if (s_.substr(pos_, 5) == "sqrt(") {
      pos_ += 5;
      Scalar v = scalar_sum();
      expect(')');
      return square_root(v, at);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      if (c == 'e') fail("'e' must be followed by basis indices");
      ++pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      return Scalar(Polynomial::variable(std::string(s_.substr(at, pos_ - at))));
    }
    fail("expected a number, symbol, monomial or '('");
  }

  Scalar square_root(const Scalar& v, std::size_t at) const {
    switch (v.ring()) {
      case Ring::rational: {
        if (v.rational() < 0) fail_at("square root of a negative number", at);
        if (auto r = exact_sqrt(v.rational())) return Scalar(*r);
        return Scalar(std::sqrt(to_double(v.rational())));
      }
      case Ring::float64:
        if (v.float64() < 0) fail_at("square root of a negative number", at);
        return Scalar(std::sqrt(v.float64()));
      case Ring::polynomial:
        if (auto c = v.polynomial().constant_value()) return square_root(Scalar(*c), at);
        if (auto r = v.polynomial().sqrt()) return Scalar(*r);
        fail_at("square root of a non-square polynomial", at);
    }
    fail_at("unsupported square root", at);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

KForm<Scalar> assemble(const FormParser& p, const std::vector<Term>& terms, int dim, int default_degree) {
  std::optional<int> degree;
  for (const auto& t : terms) {
    if (!t.monomial) {
      if (!is_zero(t.coeff)) p.fail_at("term without a basis monomial", t.offset);
      continue;
    }
    int k = static_cast<int>(t.monomial->size());
    if (degree && *degree != k) p.fail_at("monomials of different degrees", t.offset);
    degree = k;
    for (int i : *t.monomial)
      if (i >= dim) p.fail_at("basis index " + std::to_string(i + 1) + " exceeds dimension " + std::to_string(dim), t.offset);
  }
  int k = degree.value_or(default_degree);
  if (k > dim) p.fail_at("degree exceeds dimension", 0);
  KForm<Scalar> f(dim, k);
  for (const auto& t : terms) {
    if (!t.monomial) continue;
    auto sorted = IndexSet::from_sequence(*t.monomial);
    if (!sorted) continue;  // repeated index
    try {
      f.add(sorted->first, sorted->second > 0 ? t.coeff : -t.coeff);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      p.fail_at(e.what(), t.offset);
    }
  }
  return f;
}

}  // namespace

KForm<Scalar> parse_form(std::string_view text, int dim, int default_degree) {
  FormParser p(text);
  auto terms = p.top_sum();
  if (!p.at_end()) p.fail("unexpected trailing input");
  return assemble(p, terms, dim, default_degree);
}

std::vector<KForm<Scalar>> parse_coframe(std::string_view text) {
  FormParser p(text);
  p.expect('(');
  std::vector<std::vector<Term>> entries;
  while (true) {
    entries.push_back(p.top_sum());
    p.skip_ws();
    if (p.peek() == ',') {
      p.expect(',');
      continue;
    }
    p.expect(')');
    break;
  }
  if (!p.at_end()) p.fail("unexpected trailing input");
  const int n = static_cast<int>(entries.size());
  if (n > kMaxDimension) p.fail_at("more than " + std::to_string(kMaxDimension) + " coframe entries", 0);
  std::vector<KForm<Scalar>> out;
  for (const auto& e : entries) {
    auto f = assemble(p, e, n, 2);
    if (f.degree() != 2) p.fail_at("structure equations must be 2-forms", e.front().offset);
    out.push_back(std::move(f));
  }
  return out;
}

Ring ring_of(const KForm<Scalar>& form) {
  Ring r = Ring::rational;
  for (const auto& [k, v] : form.terms()) r = join(r, v.ring());
  return r;
}

Ring ring_of(const std::vector<KForm<Scalar>>& forms) {
  Ring r = Ring::rational;
  for (const auto& f : forms) r = join(r, ring_of(f));
  return r;
}

Scalar parse_scalar(std::string_view text) {
  FormParser p(text);
  Scalar v = p.scalar_sum();
  p.skip_ws();
  if (!p.at_end()) p.fail("unexpected trailing input");
  return v;
}

Matrix<Scalar> parse_matrix(std::string_view text) {
  FormParser p(text);
  p.skip_ws();
  std::vector<std::vector<Scalar>> rows;
  if (text.substr(p.pos(), 5) == "diag(") {
    p.expect('d');
    for (char c : std::string_view("iag")) p.expect(c);
    p.expect('(');
    std::vector<Scalar> d;
    while (true) {
      d.push_back(p.scalar_sum());
      p.skip_ws();
      if (p.peek() == ',') {
        p.expect(',');
        continue;
      }
      p.expect(')');
      break;
    }
    if (!p.at_end()) p.fail("unexpected trailing input");
    return Matrix<Scalar>::diagonal(d);
  }
  p.expect('[');
  while (true) {
    p.expect('[');
    std::vector<Scalar> row;
    while (true) {
      row.push_back(p.scalar_sum());
      p.skip_ws();
      if (p.peek() == ',') {
        p.expect(',');
        continue;
      }
      p.expect(']');
      break;
    }
    rows.push_back(std::move(row));
    p.skip_ws();
    if (p.peek() == ',') {
      p.expect(',');
      continue;
    }
    p.expect(']');
    break;
  }
  if (!p.at_end()) p.fail("unexpected trailing input");
  for (const auto& r : rows)
    if (r.size() != rows.size()) throw ParseError("matrix must be square", 0);
  Matrix<Scalar> m(rows.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
  return m;
}

AnyAlgebra parse_any_algebra(std::string_view text, std::optional<Ring> ring, double tol) {
  auto forms = parse_coframe(text);
  Ring r = ring.value_or(ring_of(forms));
  switch (r) {
    case Ring::rational:
      return LieAlgebra<Rational>(convert_forms<Rational>(forms), tol);
    case Ring::polynomial:
      return LieAlgebra<Polynomial>(convert_forms<Polynomial>(forms), tol);
    case Ring::float64:
      return LieAlgebra<double>(convert_forms<double>(forms), tol);
  }
  throw RingMismatch("unknown ring");
}

Ring ring_of(const AnyAlgebra& a) { return static_cast<Ring>(a.index()); }

std::string render(const AnyAlgebra& a) {
  return std::visit([](const auto& L) { return render(L); }, a);
}

int dim_of(const AnyAlgebra& a) {
  return std::visit([](const auto& L) { return L.dim(); }, a);
}

}  // namespace g2forge
