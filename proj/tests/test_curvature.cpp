#include <random>

#include "doctest.h"
#include "g2forge/catalog.hpp"
#include "g2forge/curvature.hpp"
#include "support.hpp"

using namespace g2forge;
using M = Matrix<Rational>;
using Alg = LieAlgebra<Rational>;

namespace {

Alg algebra(const std::string& name) { return std::get<Alg>(load_algebra(name)); }

template <class T>
void check_connection_invariants(const MetricLieAlgebra<T>& m) {
  auto conn = levi_civita(m);
  const auto& L = m.algebra();
  const auto& g = m.metric();
  const int n = m.dim();
  auto basis = detail::standard_basis<T>(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto tor = conn.nabla(i, j);
      auto other = conn.nabla(j, i);
      for (int k = 0; k < n; ++k) CHECK(tor[k] - other[k] == L.bracket(i, j)[k]);
      for (int k = 0; k < n; ++k)
        CHECK(is_zero(detail::pair(g, conn.nabla(i, j), basis[k]) + detail::pair(g, basis[j], conn.nabla(i, k))));
    }
}

template <class T>
void check_riemann_symmetries(const CurvatureTensors<T>& c) {
  const int n = c.n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const T& r = c.R(i, j, k, l);
          CHECK(r == -c.R(j, i, k, l));
          CHECK(r == -c.R(i, j, l, k));
          CHECK(r == c.R(k, l, i, j));
          CHECK(is_zero(r + c.R(j, k, i, l) + c.R(k, i, j, l)));
        }
}

}  // namespace

TEST_CASE("Levi-Civita connection") {
  MetricLieAlgebra<Rational> ab(Alg::abelian(6));
  auto flat = levi_civita(ab);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) CHECK(flat.nabla(i, j) == Vector<Rational>(6, Rational(0)));

  MetricLieAlgebra<Rational> n28(algebra("n28"));
  auto conn = levi_civita(n28);
  CHECK(conn.nabla(0, 2) == Vector<Rational>{0, 0, 0, 0, Rational(-1) / 2, 0});
  check_connection_invariants(n28);

  MetricLieAlgebra<Polynomial> hyp(std::get<LieAlgebra<Polynomial>>(load_algebra("hyperbolic-a")));
  auto hc = levi_civita(hyp);
  auto a = Polynomial::variable("a");
  Vector<Polynomial> e7a(7), e1a(7);
  e7a[6] = a;
  e1a[0] = -a;
  CHECK(hc.nabla(0, 0) == e7a);
  CHECK(hc.nabla(0, 6) == e1a);
  check_connection_invariants(hyp);
}

TEST_CASE("Ricci tensors of the worked examples") {
  MetricLieAlgebra<Rational> n28(algebra("n28"));
  auto c = curvature_tensors(n28);
  CHECK(c.ricci == Rational(-3) * M::identity(6) + Rational(2) * M::diagonal({1, 1, 1, 1, 2, 2}));
  CHECK(c.scal == -2);
  CHECK_FALSE(einstein_check(n28).has_value());

  MetricLieAlgebra<Rational> s28(algebra("s28"));
  auto cs = curvature_tensors(s28);
  CHECK(cs.ricci == Rational(-3) * M::identity(7));
  CHECK(cs.scal == -21);
  CHECK(einstein_check(s28) == Rational(-3));

  MetricLieAlgebra<Polynomial> hyp(std::get<LieAlgebra<Polynomial>>(load_algebra("hyperbolic-a")));
  auto ch = curvature_tensors(hyp);
  auto a = Polynomial::variable("a");
  CHECK(ch.ricci == Polynomial(-6) * a * a * Matrix<Polynomial>::identity(7));
  CHECK(einstein_check(hyp) == Polynomial(-6) * a * a);

  MetricLieAlgebra<Rational> ab(Alg::abelian(6));
  CHECK(einstein_check(ab) == Rational(0));
}

TEST_CASE("Riemann symmetries and traces on the catalog") {
  for (const auto& entry : algebra_catalog()) {
    auto any = load_algebra(entry.name);
    if (auto* L = std::get_if<Alg>(&any)) {
      MetricLieAlgebra<Rational> m(*L);
      auto c = curvature_tensors(m);
      check_riemann_symmetries(c);
      CHECK(c.ricci.trace() == c.scal);
      CHECK(is_symmetric(c.ricci));
    }
  }
  MetricLieAlgebra<Rational> ab(Alg::abelian(7));
  auto c = curvature_tensors(ab);
  for (const auto& r : c.riemann) CHECK(r == 0);
}

TEST_CASE("curvature with non-orthonormal metrics") {
  std::mt19937_64 rng(51);
  for (const char* name : {"n28", "n9", "n4", "s28"}) {
    auto L = algebra(name);
    const int n = L.dim();
    M p(n, n);
    do {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) p(i, j) = testing::random_rational(rng, 2, 2);
    } while (determinant(p) == 0);
    MetricLieAlgebra<Rational> m(L, p.transpose() * p);
    check_connection_invariants(m);
    auto c = curvature_tensors(m);
    check_riemann_symmetries(c);
    CHECK(is_symmetric(c.ricci));
  }
}

TEST_CASE("nilsoliton witnesses") {
  MetricLieAlgebra<Rational> n28(algebra("n28"));
  auto w = nilsoliton_check(n28);
  REQUIRE(w.has_value());
  CHECK(w->c == -3);
  CHECK(w->D == Rational(2) * M::diagonal({1, 1, 1, 1, 2, 2}));
  CHECK(is_derivation(n28.algebra(), w->D));

  MetricLieAlgebra<Rational> ab(Alg::abelian(6));
  auto wa = nilsoliton_check(ab);
  REQUIRE(wa.has_value());
  CHECK(wa->c == 0);
  CHECK(wa->D == M(6, 6));

  MetricLieAlgebra<double> n9(std::get<LieAlgebra<double>>(load_algebra("n9-nilsoliton")));
  auto w9 = nilsoliton_check(n9);
  REQUIRE(w9.has_value());
  CHECK(is_derivation(n9.algebra(), w9->D, 1e-10));

  // n9 with the identity metric in the unscaled frame is not a nilsoliton
  MetricLieAlgebra<Rational> plain(algebra("n9"));
  CHECK_FALSE(nilsoliton_check(plain).has_value());
}
