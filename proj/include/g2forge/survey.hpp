#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "g2forge/hitchin.hpp"
#include "g2forge/liealg.hpp"
#include "g2forge/polynomial.hpp"

namespace g2forge {

/// omega = b1 e12 + b2 e13 + ... + b15 e56 (lexicographic pairs).
KForm<Polynomial> generic_omega();

/// lambda(c d omega) for the generic 2-form, as a polynomial in b1..b15, c.
Polynomial generic_lambda(const LieAlgebra<Rational>& L);

enum class SignClass { nonneg, nonpos, zero, indefinite, uncertified };

std::string to_string(SignClass s);
SignClass parse_sign_class(std::string_view text);

struct SignCertificate {
  SignClass sign = SignClass::uncertified;
  // nonneg / nonpos: p = factor * root^2
  Rational factor;
  std::optional<Polynomial> root;
  // indefinite: assignments with p > 0 and p < 0
  std::vector<std::map<std::string, Rational>> witnesses;
  std::vector<Rational> witness_values;
};

/// Certifies the sign of p: zero; a rational multiple of a perfect square; or
/// indefinite by two integer assignments (searched with the given seed) of
/// opposite strict sign. Anything else is reported as uncertified.
SignCertificate sign_certificate(const Polynomial& p, std::uint64_t seed = 1, int attempts = 4000);

/// Checks a certificate independently of how it was found.
bool verify_certificate(const Polynomial& p, const SignCertificate& cert);

struct ReferenceLambda {
  std::string algebra;
  std::string lambda;  // printed expression
  SignClass sign;
};

/// The tabulated lambda(sigma) for the 24 nilpotent algebras with half-flat
/// structures, as published.
const std::vector<ReferenceLambda>& reference_lambda_table();

struct SurveyRow {
  std::string algebra;
  std::string equations;
  Polynomial lambda;
  Polynomial reference;
  bool matches_reference = false;
  bool homogeneous = false;  // degree 4 in c, total degree <= 4 in the b's
  SignCertificate certificate;
  SignClass reference_sign = SignClass::uncertified;
};

std::vector<SurveyRow> lambda_survey(std::uint64_t seed = 1);

struct N4Trial {
  std::vector<double> b;      // b1..b15 after solving the (1,1) equations
  double lambda = 0;
  double hvv = 0;             // h(v, v) at the predicted null vector
  double min_eigenvalue = 0;  // of h
  double type11_residual = 0;
};

struct N4Report {
  std::uint64_t seed = 0;
  int trials = 0;
  int rejected_draws = 0;    // b15 = 0 or b15 (b12 + b13) <= b14^2
  int solver_failures = 0;   // (1,1) system not solved to 1e-12
  int null_confirmed = 0;    // |h(v, v)| <= 1e-9
  int not_positive = 0;      // h has a non-positive eigenvalue
  double max_abs_hvv = 0;
  double max_min_eigenvalue = -1e300;
  std::vector<N4Trial> samples;
  bool passed() const { return null_confirmed == trials && not_positive == trials; }
};

/// Draws rational b with lambda < 0 on n4, solves omega(J., J.) = omega for
/// b2, b3, b7, b10 by Levenberg-Marquardt starting from the drawn values, and
/// evaluates h on v = e4 - (b14/b15) e5 + (b13/b15) e6. Draws where the solver
/// does not converge are counted and redrawn.
N4Report n4_obstruction_sample(int trials, std::uint64_t seed);

struct N9Report {
  std::string frame;
  std::uint64_t seed = 0;
  int starts = 0;
  int feasible = 0;             // residual <= 1e-8 with lambda <= -1e-6
  double best_residual = 0;     // over starts ending with lambda < 0
  double best_lambda = 0;       // lambda at the best residual
  int stable_endpoints = 0;     // starts ending with lambda < 0
  std::vector<double> best_b;
  bool passed() const { return feasible == 0; }
};

/// Multi-start search for omega with lambda(d omega) < 0, omega ^ d omega = 0
/// and h = identity on the given frame (c = 1 and the scale of h are fixed
/// without loss of generality: J is invariant under sigma -> c sigma and
/// h scales with omega).
N9Report nilsoliton_obstruction_sample(const LieAlgebra<double>& L, const std::string& frame, int starts,
                                       std::uint64_t seed);

/// The search above on the nilsoliton frame of n9.
N9Report n9_nilsoliton_obstruction_sample(int starts, std::uint64_t seed);

}  // namespace g2forge
