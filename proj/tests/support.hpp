#pragma once

#include <random>

#include "g2forge/exterior.hpp"
#include "g2forge/rational.hpp"

namespace g2forge::testing {

/// Small random rationals p/q with |p| <= range, 1 <= q <= den.
inline Rational random_rational(std::mt19937_64& rng, long range = 9, long den = 5) {
  std::uniform_int_distribution<long> num(-range, range);
  std::uniform_int_distribution<long> d(1, den);
  return Rational(num(rng)) / Rational(d(rng));
}

inline Rational random_nonzero_rational(std::mt19937_64& rng, long range = 9, long den = 5) {
  Rational q;
  do q = random_rational(rng, range, den);
  while (q == 0);
  return q;
}

inline KForm<Rational> random_form(std::mt19937_64& rng, int dim, int degree, double density = 0.6) {
  std::bernoulli_distribution keep(density);
  KForm<Rational> f(dim, degree);
  for (auto idx : subsets(dim, degree))
    if (keep(rng)) f.add(idx, random_rational(rng));
  return f;
}

inline Vector<Rational> random_vector(std::mt19937_64& rng, int dim) {
  Vector<Rational> v;
  for (int i = 0; i < dim; ++i) v.push_back(random_rational(rng));
  return v;
}

}  // namespace g2forge::testing
