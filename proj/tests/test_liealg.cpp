#include <random>

#include "doctest.h"
#include "g2forge/catalog.hpp"
#include "g2forge/liealg.hpp"
#include "support.hpp"

using namespace g2forge;
using F = KForm<Rational>;
using Alg = LieAlgebra<Rational>;

namespace {

Alg algebra(const std::string& name) { return std::get<Alg>(load_algebra(name)); }

F form(const std::string& text, int dim) { return convert_forms<Rational>({parse_form(text, dim)}).front(); }

// Dual action of an endomorphism D on forms, extended as a derivation:
// (D.a)(X1..Xk) = sum_i a(X1, .., D Xi, .., Xk).
F dual_action(const Matrix<Rational>& D, const F& a) {
  const int n = a.dim();
  F out(n, a.degree());
  for (const auto& [idx, c] : a.terms()) {
    auto ind = idx.indices();
    for (std::size_t p = 0; p < ind.size(); ++p) {
      // replace e^{ind[p]} by sum_j D(ind[p], j) e^j
      for (int j = 0; j < n; ++j) {
        if (D(ind[p], j) == 0) continue;
        std::vector<int> seq = ind;
        seq[p] = j;
        auto s = IndexSet::from_sequence(seq);
        if (!s) continue;
        Rational v = c * D(ind[p], j);
        out.add(s->first, s->second > 0 ? v : Rational(-v));
      }
    }
  }
  return out;
}

// Independent derivation test: D is a derivation iff its dual action commutes
// with d on the coframe.
bool commutes_with_d(const Alg& L, const Matrix<Rational>& D) {
  for (int k = 0; k < L.dim(); ++k) {
    F ek = F::coframe(L.dim(), k);
    if (!(L.differential(dual_action(D, ek)) == dual_action(D, L.d(k)))) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("parsing structure equations") {
  auto n28 = parse_structure_equations<Rational>("(0,0,0,0,e13-e24,e14+e23)");
  CHECK(n28.dim() == 6);
  CHECK(n28.d(4) == form("e13-e24", 6));
  auto ab = parse_structure_equations<Rational>("(0,0,0,0,0,0)");
  CHECK(ab.is_abelian());
  auto n6 = parse_structure_equations<Rational>("(0,0,e12,e13,e23,e14)");
  CHECK(n6.d(5) == form("e14", 6));
  CHECK(render(n28) == "(0,0,0,0,e13-e24,e14+e23)");
}

TEST_CASE("coefficient grammar") {
  CHECK(form("1/2*e17 - 1/2e27", 7) == F::monomial(7, IndexSet::of({0, 6}), Rational(1) / 2) -
                                           F::monomial(7, IndexSet::of({1, 6}), Rational(1) / 2));
  CHECK(form("e21", 3) == -F::monomial(3, IndexSet::of({0, 1})));
  CHECK(form("e11", 3).is_zero());
  CHECK(form("0.25*e12", 3) == F::monomial(3, IndexSet::of({0, 1}), Rational(1) / 4));
  CHECK(form("sqrt(9/4)*e12", 3) == F::monomial(3, IndexSet::of({0, 1}), Rational(3) / 2));
  auto sym = parse_form("ae17+b1e12", 7);
  CHECK(ring_of(sym) == Ring::polynomial);
  CHECK(sym.coeff(IndexSet::of({0, 6})).polynomial() == Polynomial::variable("a"));
  CHECK(sym.coeff(IndexSet::of({0, 1})).polynomial() == Polynomial::variable("b1"));
  auto fl = parse_form("(sqrt(5)/2)e12", 3);
  CHECK(ring_of(fl) == Ring::float64);
  CHECK(fl.coeff(IndexSet::of({0, 1})).float64() == doctest::Approx(std::sqrt(5.0) / 2));
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_structure_equations<Rational>("(0,0,e12,,e13)");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 9);
  }
  CHECK_THROWS_AS(parse_form("e12+e3", 4), ParseError);
  CHECK_THROWS_AS(parse_form("e19", 4), ParseError);
  CHECK_THROWS_AS(parse_form("3", 4), ParseError);
  CHECK_THROWS_AS(parse_form("e12*e34", 4), ParseError);
  CHECK_THROWS_AS(parse_form("a*sqrt(2)*e12", 4), ParseError);
  CHECK_THROWS_AS(parse_structure_equations<Rational>("(0,0,e12"), ParseError);
  CHECK_THROWS_AS(parse_structure_equations<Rational>("(0,e1,0)"), ParseError);
}

TEST_CASE("Jacobi violations are reported with the first bad index") {
  try {
    parse_structure_equations<Rational>("(0,0,e12,e13+e24)");
    FAIL("expected a Jacobi violation");
  } catch (const JacobiViolation& e) {
    CHECK(e.index() == 4);
  }
}

TEST_CASE("Chevalley-Eilenberg differential") {
  auto n28 = algebra("n28");
  CHECK(n28.differential(F::coframe(6, 4)) == form("e13-e24", 6));
  CHECK(n28.differential(form("e12+e34-e56", 6)) == -form("e136-e145-e235-e246", 6));
  CHECK(n28.bracket(0, 2) == Vector<Rational>{0, 0, 0, 0, -1, 0});
}

TEST_CASE("d squared vanishes on every catalog algebra") {
  std::mt19937_64 rng(31);
  for (const auto& entry : algebra_catalog()) {
    auto any = load_algebra(entry.name);
    std::visit(
        [&](const auto& L) {
          using T = std::decay_t<decltype(L)>;
          for (int k = 0; k < L.dim(); ++k) CHECK(L.differential(L.d(k)).near_zero(1e-12));
          if constexpr (std::is_same_v<T, Alg>) {
            for (int deg = 1; deg <= 3; ++deg) {
              F a = testing::random_form(rng, L.dim(), deg);
              CHECK(L.differential(L.differential(a)).is_zero());
            }
          }
        },
        any);
  }
}

TEST_CASE("catalog round-trips through the renderer") {
  for (const auto& entry : algebra_catalog()) {
    auto any = load_algebra(entry.name);
    std::string once = render(any);
    auto again = parse_any_algebra(once, ring_of(any));
    CHECK(render(again) == once);
  }
}

TEST_CASE("nilpotency") {
  int rows = 0;
  for (const auto& entry : algebra_catalog()) {
    if (!entry.half_flat_row) continue;
    ++rows;
    CHECK_MESSAGE(is_nilpotent(algebra(entry.name)).nilpotent, entry.name);
  }
  CHECK(rows == 24);
  auto n28 = is_nilpotent(algebra("n28"));
  CHECK(n28.step == 2);
  CHECK(n28.series_dimensions == std::vector<int>{6, 2, 0});
  CHECK(is_nilpotent(algebra("n34")).step == 1);
  CHECK(is_nilpotent(algebra("n4")).step == 5);
  auto s28 = algebra("s28");
  CHECK_FALSE(is_nilpotent(s28).nilpotent);
  CHECK(is_solvable(s28));
  auto hyp = parse_structure_equations<Rational>("(2*e17,2*e27,2*e37,2*e47,2*e57,2*e67,0)");
  CHECK_FALSE(is_nilpotent(hyp).nilpotent);
  CHECK(is_solvable(hyp));
  CHECK(is_nilpotent(std::get<LieAlgebra<double>>(load_algebra("n9-nilsoliton"))).nilpotent);
}

TEST_CASE("derivation spaces") {
  auto ab = algebra("n34");
  auto basis = derivation_space(ab);
  REQUIRE(basis.size() == 36);
  for (std::size_t b = 0; b < basis.size(); ++b) {
    Matrix<Rational> expected(6, 6);
    expected(b / 6, b % 6) = 1;
    CHECK(basis[b] == expected);
  }
  for (const auto& entry : algebra_catalog()) {
    if (!entry.half_flat_row) continue;
    auto L = algebra(entry.name);
    auto ders = derivation_space(L);
    CHECK(derivation_space(L).size() == ders.size());
    for (const auto& D : ders) {
      CHECK(is_derivation(L, D));
      CHECK(commutes_with_d(L, D));
    }
  }
  auto n28 = algebra("n28");
  auto D = Matrix<Rational>::diagonal({2, 2, 2, 2, 4, 4});
  CHECK(is_derivation(n28, D));
  CHECK(commutes_with_d(n28, D));
  auto bad = Matrix<Rational>::diagonal({1, 1, 1, 2, 2, 2});
  CHECK_FALSE(is_derivation(n28, bad));
  CHECK_FALSE(commutes_with_d(n28, bad));
  CHECK_FALSE(is_derivation(n28, Matrix<Rational>::identity(6)));
}

TEST_CASE("rank-one extensions") {
  MetricLieAlgebra<Rational> n28(algebra("n28"));
  Rational h = Rational(1) / 2;
  auto s = rank_one_extension(n28, Matrix<Rational>::diagonal({h, h, h, h, 1, 1}));
  CHECK(s.algebra() == algebra("s28"));
  CHECK(s.metric() == Matrix<Rational>::identity(7));

  MetricLieAlgebra<Polynomial> ab(LieAlgebra<Polynomial>::abelian(6));
  auto a = Polynomial::variable("a");
  auto hyp = rank_one_extension(ab, a * Matrix<Polynomial>::identity(6));
  CHECK(hyp.algebra() == std::get<LieAlgebra<Polynomial>>(load_algebra("hyperbolic-a")));

  auto L = algebra("n9");
  auto direct = rank_one_extension(MetricLieAlgebra<Rational>(L), Matrix<Rational>(6, 6));
  for (int k = 0; k < 6; ++k) CHECK(direct.algebra().d(k) == L.d(k).embed(7));
  CHECK(direct.algebra().d(6).is_zero());

  CHECK_THROWS_AS(rank_one_extension(n28, Matrix<Rational>::identity(6)), NotDerivation);
}

TEST_CASE("random derivations give Jacobi-consistent extensions") {
  std::mt19937_64 rng(32);
  for (const char* name : {"n4", "n9", "n15", "n28", "n30"}) {
    auto L = algebra(name);
    auto basis = derivation_space(L);
    for (int trial = 0; trial < 5; ++trial) {
      Matrix<Rational> D(6, 6);
      for (const auto& b : basis) D = D + testing::random_rational(rng, 3, 2) * b;
      auto s = rank_one_extension(MetricLieAlgebra<Rational>(L), D);  // constructor checks d^2 = 0
      CHECK(s.dim() == 7);
    }
  }
}

TEST_CASE("matrix text") {
  auto m = parse_matrix("[[1,1/2],[1/2,2]]");
  CHECK(m(0, 1).rational() == Rational(1) / 2);
  auto d = parse_matrix("diag(1, 2, a)");
  CHECK(d(2, 2).ring() == Ring::polynomial);
  CHECK_THROWS_AS(parse_matrix("[[1,2],[3]]"), ParseError);
}
