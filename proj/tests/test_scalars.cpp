#include <random>

#include "doctest.h"
#include "g2forge/matrix.hpp"
#include "g2forge/polynomial.hpp"
#include "g2forge/scalar.hpp"
#include "support.hpp"

using namespace g2forge;
using g2forge::testing::random_rational;

TEST_CASE("rational arithmetic stays in lowest terms") {
  Rational a = parse_rational("1/2"), b = parse_rational("1/3");
  CHECK(to_string(a + b) == "5/6");
  CHECK(to_string(parse_rational("6/4")) == "3/2");
  CHECK(to_string(parse_rational("-0.125")) == "-1/8");
  CHECK(to_string(parse_rational("7")) == "7");
  CHECK_THROWS_AS(parse_rational("1/0"), DivisionByZero);
  CHECK_THROWS_AS(parse_rational("x"), ParseError);
}

TEST_CASE("exact roots") {
  CHECK(exact_root(Rational(225) / 64, 2) == Rational(15) / 8);
  CHECK_FALSE(exact_root(Rational(2), 2).has_value());
  CHECK(exact_root(Rational(512), 9) == Rational(2));
  CHECK_FALSE(exact_root(Rational(-4), 2).has_value());
  CHECK(exact_root(Rational(-8), 3) == Rational(-2));
}

TEST_CASE("rationalize recovers simple fractions") {
  CHECK(rationalize(0.75) == Rational(3) / 4);
  CHECK(rationalize(-1.0 / 3.0) == Rational(-1) / 3);
}

TEST_CASE("polynomial products and evaluation") {
  auto b15 = Polynomial::variable("b15");
  CHECK(b15 * b15.pow(3) == b15.pow(4));
  auto p = parse_polynomial("-4*c^4*b15^4");
  CHECK(p.eval({{"c", Rational(-1)}, {"b15", Rational(-1)}}) == -4);
  CHECK(Polynomial().eval(std::map<std::string, Rational>{}) == 0);
  auto q = parse_polynomial("c^4*(b14^2-b15^2)^2");
  CHECK(q.eval({{"c", Rational(1)}, {"b14", Rational(2)}, {"b15", Rational(1)}}) == 9);
  CHECK_THROWS_AS(q.eval({{"c", Rational(1)}}), MissingVariable);
}

TEST_CASE("polynomial parsing and rendering round-trip") {
  for (const char* text : {"4*c^4*b15^2*(-b15*(b12+b13)+b14^2)", "c^4*(b14^2+b15^2)^2", "0", "-3/2*a^2", "2b1c"}) {
    auto p = parse_polynomial(text);
    CHECK(parse_polynomial(p.to_string()) == p);
  }
  CHECK(parse_polynomial("2b1c") == Polynomial(2) * Polynomial::variable("b1") * Polynomial::variable("c"));
  CHECK_THROWS_AS(parse_polynomial("b1/b2"), ParseError);
  CHECK(parse_rational("010") == 10);
  CHECK(parse_rational("007/08") == Rational(7) / 8);
  CHECK_THROWS_AS(parse_polynomial("b1+*"), ParseError);
}

TEST_CASE("variable order is natural") {
  CHECK(variable_less("a", "b1"));
  CHECK(variable_less("b2", "b10"));
  CHECK(variable_less("b15", "c"));
  auto p = parse_polynomial("c*b10 + b2");
  CHECK(p.variables() == std::vector<std::string>{"b2", "b10", "c"});
}

TEST_CASE("polynomial square roots") {
  auto p = parse_polynomial("c^4*(b14^2-b15^2)^2");
  auto r = p.sqrt();
  REQUIRE(r.has_value());
  CHECK(*r * *r == p);
  CHECK_FALSE(parse_polynomial("b1^2+b2^2").sqrt().has_value());
  CHECK_FALSE(parse_polynomial("-b1^2").sqrt().has_value());
}

TEST_CASE("scalar promotion rules") {
  Scalar q(Rational(1) / 2);
  Scalar p(Polynomial::variable("a"));
  Scalar f(0.25);
  CHECK((q + p).ring() == Ring::polynomial);
  CHECK((q + f).ring() == Ring::float64);
  CHECK((q + f).float64() == doctest::Approx(0.75));
  CHECK_THROWS_AS(p + f, RingMismatch);
  CHECK_THROWS_AS(q / Scalar(0), DivisionByZero);
  CHECK_THROWS_AS(p / p, NotRepresentable);
  CHECK((p / Scalar(2)).to_string() == "1/2*a");
  CHECK(Scalar(Polynomial(3)).to_ring(Ring::rational).rational() == 3);
  CHECK_THROWS_AS(f.to_ring(Ring::rational), RingMismatch);
}

TEST_CASE("float rendering never uses exponent notation") {
  CHECK(to_string(0.5) == "0.5");
  CHECK(to_string(1e-5) == "0.00001");
  CHECK(std::stod(to_string(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("ring axioms on random rationals") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    Rational a = random_rational(rng), b = random_rational(rng), c = random_rational(rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
  }
}

TEST_CASE("polynomial arithmetic agrees with evaluation") {
  std::mt19937_64 rng(12);
  auto p = parse_polynomial("b1^2*c - 3*b2*b1 + 1/2");
  auto q = parse_polynomial("c^3 + b2 - 2*b1*b2*c");
  for (int i = 0; i < 50; ++i) {
    std::map<std::string, Rational> x{{"b1", random_rational(rng)}, {"b2", random_rational(rng)},
                                      {"c", random_rational(rng)}};
    CHECK((p * q).eval(x) == p.eval(x) * q.eval(x));
    CHECK((p + q).eval(x) == p.eval(x) + q.eval(x));
  }
}

TEST_CASE("float evaluation agrees with exact evaluation") {
  std::mt19937_64 rng(13);
  auto p = parse_polynomial("4*c^4*b15^2*(-b15*(b12+b13)+b14^2)");
  std::uniform_int_distribution<long> big(-1000, 1000);
  for (int i = 0; i < 50; ++i) {
    std::map<std::string, Rational> x;
    std::map<std::string, double> xf;
    for (auto name : {"c", "b12", "b13", "b14", "b15"}) {
      Rational v = Rational(big(rng)) / Rational(7);
      x[name] = v;
      xf[name] = to_double(v);
    }
    double exact = to_double(p.eval(x));
    double approx = p.eval(xf);
    CHECK(std::abs(approx - exact) <= 1e-12 * std::max(1.0, std::abs(exact)));
  }
}

TEST_CASE("exact linear algebra") {
  Matrix<Rational> a(3, 3);
  int v[3][3] = {{2, 1, 0}, {1, 3, 1}, {0, 1, 4}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a(i, j) = v[i][j];
  CHECK(determinant(a) == 18);
  CHECK(inverse(a) * a == Matrix<Rational>::identity(3));
  CHECK(positive_definite(a));
  a(0, 0) = -1;
  CHECK_FALSE(positive_definite(a));
  Matrix<Rational> s(2, 3);
  s(0, 0) = 1;
  s(0, 1) = 2;
  s(1, 0) = 2;
  s(1, 1) = 4;
  auto ns = nullspace(s);
  CHECK(ns.size() == 2);
  for (const auto& x : ns) {
    auto y = s * x;
    CHECK(y == Vector<Rational>(2, Rational(0)));
  }
  CHECK_FALSE(solve(s, Vector<Rational>{Rational(1), Rational(1)}).has_value());
}
