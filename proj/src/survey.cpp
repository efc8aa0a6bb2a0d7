#include "g2forge/survey.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>
#include <algorithm>
#include <cmath>
#include <random>

#include "g2forge/catalog.hpp"

namespace g2forge {

namespace {

std::string b_name(int p) { return "b" + std::to_string(p + 1); }

}  // namespace

KForm<Polynomial> generic_omega() {
  KForm<Polynomial> omega(6, 2);
  auto pairs = subsets(6, 2);
  for (std::size_t p = 0; p < pairs.size(); ++p) omega.add(pairs[p], Polynomial::variable(b_name(int(p))));
  return omega;
}

Polynomial generic_lambda(const LieAlgebra<Rational>& L) {
  if (L.dim() != 6) throw DimensionMismatch("generic_lambda needs a 6-dimensional algebra");
  auto P = L.convert_to<Polynomial>();
  KForm<Polynomial> sigma = Polynomial::variable("c") * P.differential(generic_omega());
  return hitchin_lambda(sigma);
}

std::string to_string(SignClass s) {
  switch (s) {
    case SignClass::nonneg:
      return "nonneg";
    case SignClass::nonpos:
      return "nonpos";
    case SignClass::zero:
      return "zero";
    case SignClass::indefinite:
      return "indefinite";
    case SignClass::uncertified:
      return "uncertified";
  }
  return "uncertified";
}

SignClass parse_sign_class(std::string_view text) {
  for (auto s : {SignClass::nonneg, SignClass::nonpos, SignClass::zero, SignClass::indefinite, SignClass::uncertified})
    if (to_string(s) == text) return s;
  throw ParseError("unknown sign class '" + std::string(text) + "'", 0, 1, 1);
}

SignCertificate sign_certificate(const Polynomial& p, std::uint64_t seed, int attempts) {
  SignCertificate cert;
  if (p.is_zero()) {
    cert.sign = SignClass::zero;
    return cert;
  }
  const Rational lead = p.terms().begin()->second;
  if (auto root = p.divide_exact(Polynomial(lead)).sqrt()) {
    cert.sign = lead > 0 ? SignClass::nonneg : SignClass::nonpos;
    cert.factor = lead;
    cert.root = std::move(root);
    return cert;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(-3, 3);
  std::optional<std::map<std::string, Rational>> pos, neg;
  Rational pos_value, neg_value;
  for (int t = 0; t < attempts && !(pos && neg); ++t) {
    std::map<std::string, Rational> a;
    for (const auto& v : p.variables()) a[v] = Rational(pick(rng));
    Rational value = p.eval(a);
    if (value > 0 && !pos) {
      pos = a;
      pos_value = value;
    } else if (value < 0 && !neg) {
      neg = a;
      neg_value = value;
    }
  }
  if (pos && neg) {
    cert.sign = SignClass::indefinite;
    cert.witnesses = {*pos, *neg};
    cert.witness_values = {pos_value, neg_value};
  }
  return cert;
}

bool verify_certificate(const Polynomial& p, const SignCertificate& cert) {
  switch (cert.sign) {
    case SignClass::zero:
      return p.is_zero();
    case SignClass::nonneg:
    case SignClass::nonpos: {
      if (!cert.root) return false;
      bool sign_ok = cert.sign == SignClass::nonneg ? cert.factor > 0 : cert.factor < 0;
      return sign_ok && p == Polynomial(cert.factor) * *cert.root * *cert.root;
    }
    case SignClass::indefinite: {
      if (cert.witnesses.size() != 2 || cert.witness_values.size() != 2) return false;
      Rational a = p.eval(cert.witnesses[0]), b = p.eval(cert.witnesses[1]);
      return a == cert.witness_values[0] && b == cert.witness_values[1] && a * b < 0;
    }
    case SignClass::uncertified:
      return false;
  }
  return false;
}

const std::vector<ReferenceLambda>& reference_lambda_table() {
  static const std::vector<ReferenceLambda> rows = {
      {"n4", "4*c^4*b15^2*(-b15*(b12+b13)+b14^2)", SignClass::indefinite},
      {"n6", "c^4*b15^4", SignClass::nonneg},
      {"n7", "c^4*(b14^2-b15^2)^2", SignClass::nonneg},
      {"n8", "c^4*(b14^2-b15^2)^2", SignClass::nonneg},
      {"n9", "4*c^4*b15^2*(-b15*(b9+b13)+b14^2)", SignClass::indefinite},
      {"n10", "c^4*b15^4", SignClass::nonneg},
      {"n11", "c^4*b15^4", SignClass::nonneg},
      {"n12", "0", SignClass::zero},
      {"n13", "0", SignClass::zero},
      {"n14", "c^4*b14^4", SignClass::nonneg},
      {"n15", "c^4*(b14^2-b15^2)^2", SignClass::nonneg},
      {"n16", "c^4*(b14^2+b15^2)^2", SignClass::nonneg},
      {"n21", "0", SignClass::zero},
      {"n22", "c^4*b15^4", SignClass::nonneg},
      {"n24", "0", SignClass::zero},
      {"n25", "c^4*b15^4", SignClass::nonneg},
      {"n27", "0", SignClass::zero},
      {"n28", "-4*c^4*b15^4", SignClass::nonpos},
      {"n29", "0", SignClass::zero},
      {"n30", "c^4*b15^4", SignClass::nonneg},
      {"n31", "0", SignClass::zero},
      {"n32", "0", SignClass::zero},
      {"n33", "0", SignClass::zero},
      {"n34", "0", SignClass::zero},
  };
  return rows;
}

std::vector<SurveyRow> lambda_survey(std::uint64_t seed) {
  std::vector<SurveyRow> out;
  for (const auto& ref : reference_lambda_table()) {
    SurveyRow row;
    row.algebra = ref.algebra;
    row.equations = catalog_algebra(ref.algebra).equations;
    row.lambda = generic_lambda(parse_structure_equations<Rational>(row.equations));
    row.reference = parse_polynomial(ref.lambda);
    row.reference_sign = ref.sign;
    row.matches_reference = row.lambda == row.reference;
    bool ok = row.lambda.is_homogeneous_in("c", 4) || row.lambda.is_zero();
    const auto& vars = row.lambda.variables();
    for (const auto& [exps, coeff] : row.lambda.terms()) {
      int b_degree = 0;
      for (std::size_t v = 0; v < vars.size(); ++v)
        if (vars[v] != "c") b_degree += exps[v];
      ok = ok && b_degree <= 4;
    }
    row.homogeneous = ok;
    row.certificate = sign_certificate(row.lambda, seed);
    out.push_back(std::move(row));
  }
  return out;
}

namespace {

using Mat6 = Eigen::Matrix<double, 6, 6>;

/// Pfaffian of an antisymmetric matrix of even size.
double pfaffian(const Eigen::MatrixXd& a) {
  const Eigen::Index n = a.rows();
  if (n == 0) return 1;
  double sum = 0;
  for (Eigen::Index j = 1; j < n; ++j) {
    if (a(0, j) == 0) continue;
    std::vector<Eigen::Index> keep;
    for (Eigen::Index k = 1; k < n; ++k)
      if (k != j) keep.push_back(k);
    Eigen::MatrixXd minor(n - 2, n - 2);
    for (std::size_t r = 0; r < keep.size(); ++r)
      for (std::size_t c = 0; c < keep.size(); ++c) minor(r, c) = a(keep[r], keep[c]);
    sum += (j % 2 ? 1.0 : -1.0) * a(0, j) * pfaffian(minor);
  }
  return sum;
}

/// K_sigma, omega ^ sigma and h for sigma = d omega, omega = sum b_p e^{pair p},
/// from precomputed bilinear kernels.
class FrameKernel {
 public:
  explicit FrameKernel(const LieAlgebra<double>& L) {
    if (L.dim() != 6) throw DimensionMismatch("the sampler needs a 6-dimensional algebra");
    pairs_ = subsets(6, 2);
    std::vector<KForm<double>> ds;
    for (auto idx : pairs_) ds.push_back(L.differential(KForm<double>::monomial(6, idx)));
    auto to_eigen = [](const Matrix<double>& m) {
      Mat6 out;
      for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) out(i, j) = m(i, j);
      return out;
    };
    auto five = subsets(6, 5);
    for (int p = 0; p < 15; ++p) {
      for (int q = 0; q < 15; ++q) {
        if (ds[p].is_zero() || ds[q].is_zero()) continue;
        Mat6 kpq = to_eigen(k_endomorphism(ds[p] + ds[q])) - to_eigen(k_endomorphism(ds[p])) -
                   to_eigen(k_endomorphism(ds[q]));
        if (kpq.isZero(0)) continue;
        k_.push_back({p, q, 0.5 * kpq});
      }
      for (int q = 0; q < 15; ++q) {
        auto w = wedge(KForm<double>::monomial(6, pairs_[p]), ds[q]);
        for (int m = 0; m < 6; ++m) {
          double v = w.coeff(five[m]);
          if (v != 0) wedge_.push_back({p, q, m, v});
        }
      }
    }
  }

  struct Eval {
    Mat6 omega;
    Mat6 k;
    double lambda = 0;
    Mat6 J;
    Mat6 h;
    Eigen::Matrix<double, 6, 1> omega_sigma;
    bool stable = false;
  };

  Eval evaluate(const Eigen::VectorXd& b) const {
    Eval e;
    e.omega.setZero();
    for (int p = 0; p < 15; ++p) {
      auto ij = pairs_[p].indices();
      e.omega(ij[0], ij[1]) = b[p];
      e.omega(ij[1], ij[0]) = -b[p];
    }
    e.k.setZero();
    for (const auto& t : k_) e.k += (b[t.p] * b[t.q]) * t.m;
    e.lambda = (e.k * e.k).trace() / 6.0;
    e.omega_sigma.setZero();
    for (const auto& t : wedge_) e.omega_sigma[t.m] += b[t.p] * b[t.q] * t.v;
    double pf = pfaffian(e.omega);
    e.stable = e.lambda < 0 && pf != 0;
    if (e.stable) {
      // K was built for e^123456; the orientation of omega^3 flips its sign
      e.J = (pf > 0 ? 1.0 : -1.0) * e.k / std::sqrt(-e.lambda);
      e.h = e.J.transpose() * e.omega;
    }
    return e;
  }

 private:
  struct KTerm {
    int p, q;
    Mat6 m;
  };
  struct WTerm {
    int p, q, m;
    double v;
  };
  std::vector<IndexSet> pairs_;
  std::vector<KTerm> k_;
  std::vector<WTerm> wedge_;
};

template <class Derived>
struct LmFunctor {
  using Scalar = double;
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };
  int n_inputs, n_values;
  int inputs() const { return n_inputs; }
  int values() const { return n_values; }
};

constexpr double kUnstablePenalty = 10.0;

struct TypeElevenSystem : LmFunctor<TypeElevenSystem> {
  const FrameKernel* kernel;
  Eigen::VectorXd base;
  std::vector<int> unknowns;
  Eigen::VectorXd full(const Eigen::VectorXd& x) const {
    Eigen::VectorXd b = base;
    for (std::size_t i = 0; i < unknowns.size(); ++i) b[unknowns[i]] = x[i];
    return b;
  }
  int operator()(const Eigen::VectorXd& x, Eigen::VectorXd& f) const {
    auto e = kernel->evaluate(full(x));
    if (!e.stable) {
      f.setConstant(kUnstablePenalty * (1 + std::abs(e.lambda)));
      return 0;
    }
    Mat6 d = e.J.transpose() * e.omega * e.J - e.omega;
    int r = 0;
    for (int i = 0; i < 6; ++i)
      for (int j = i + 1; j < 6; ++j) f[r++] = d(i, j);
    return 0;
  }
};

struct NilsolitonSystem : LmFunctor<NilsolitonSystem> {
  const FrameKernel* kernel;
  int operator()(const Eigen::VectorXd& b, Eigen::VectorXd& f) const {
    auto e = kernel->evaluate(b);
    if (!e.stable) {
      f.setConstant(kUnstablePenalty * (1 + std::max(e.lambda, 0.0)));
      return 0;
    }
    int r = 0;
    for (int i = 0; i < 6; ++i)
      for (int j = i; j < 6; ++j) f[r++] = e.h(i, j) - (i == j ? 1.0 : 0.0);
    for (int m = 0; m < 6; ++m) f[r++] = e.omega_sigma[m];
    return 0;
  }
};

template <class System>
Eigen::VectorXd minimize(const System& system, Eigen::VectorXd x, int maxfev) {
  Eigen::NumericalDiff<System> diff(system);
  Eigen::LevenbergMarquardt<Eigen::NumericalDiff<System>, double> lm(diff);
  lm.parameters.maxfev = maxfev;
  lm.parameters.ftol = 1e-15;
  lm.parameters.xtol = 1e-15;
  lm.minimize(x);
  return x;
}

double min_eigenvalue(const Mat6& h) {
  Mat6 s = 0.5 * (h + h.transpose());
  Eigen::SelfAdjointEigenSolver<Mat6> es(s, Eigen::EigenvaluesOnly);
  return es.eigenvalues()[0];
}

}  // namespace

N4Report n4_obstruction_sample(int trials, std::uint64_t seed) {
  N4Report report;
  report.seed = seed;
  report.trials = trials;
  if (trials <= 0) {
    report.max_min_eigenvalue = 0;
    return report;
  }
  auto L = parse_structure_equations<double>(catalog_algebra("n4").equations);
  FrameKernel kernel(L);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(-9, 9), den(1, 5);
  auto draw = [&] { return double(num(rng)) / double(den(rng)); };

  TypeElevenSystem system;
  system.kernel = &kernel;
  system.unknowns = {1, 2, 6, 9};  // b2, b3, b7, b10
  system.n_inputs = 4;
  system.n_values = 15;

  while (static_cast<int>(report.samples.size()) < trials) {
    Eigen::VectorXd b(15);
    for (int p = 0; p < 15; ++p) b[p] = draw();
    const double b12 = b[11], b13 = b[12], b14 = b[13], b15 = b[14];
    if (b15 == 0 || b15 * (b12 + b13) <= b14 * b14) {
      ++report.rejected_draws;
      continue;
    }
    system.base = b;
    Eigen::VectorXd x(4);
    for (int i = 0; i < 4; ++i) x[i] = b[system.unknowns[i]];
    x = minimize(system, x, 4000);
    Eigen::VectorXd solved = system.full(x);
    Eigen::VectorXd f(15);
    system(x, f);
    auto e = kernel.evaluate(solved);
    if (!e.stable || f.cwiseAbs().maxCoeff() > 1e-12) {
      ++report.solver_failures;
      continue;
    }
    Eigen::Matrix<double, 6, 1> v;
    v << 0, 0, 0, 1, -b14 / b15, b13 / b15;
    N4Trial t;
    t.b.assign(solved.data(), solved.data() + 15);
    t.lambda = e.lambda;
    t.hvv = v.dot(e.h * v);
    t.min_eigenvalue = min_eigenvalue(e.h);
    t.type11_residual = f.cwiseAbs().maxCoeff();
    report.max_abs_hvv = std::max(report.max_abs_hvv, std::abs(t.hvv));
    report.max_min_eigenvalue = std::max(report.max_min_eigenvalue, t.min_eigenvalue);
    if (std::abs(t.hvv) <= 1e-9) ++report.null_confirmed;
    if (t.min_eigenvalue <= 1e-9) ++report.not_positive;
    report.samples.push_back(std::move(t));
  }
  return report;
}

N9Report nilsoliton_obstruction_sample(const LieAlgebra<double>& L, const std::string& frame, int starts,
                                       std::uint64_t seed) {
  N9Report report;
  report.frame = frame;
  report.seed = seed;
  report.starts = starts;
  report.best_residual = std::numeric_limits<double>::infinity();
  if (starts <= 0) {
    report.best_residual = 0;
    return report;
  }
  FrameKernel kernel(L);
  NilsolitonSystem system;
  system.kernel = &kernel;
  system.n_inputs = 15;
  system.n_values = 27;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> start(-2.0, 2.0);
  for (int s = 0; s < starts; ++s) {
    Eigen::VectorXd b(15);
    for (int p = 0; p < 15; ++p) b[p] = start(rng);
    b = minimize(system, b, 3000);
    auto e = kernel.evaluate(b);
    if (!e.stable) continue;
    ++report.stable_endpoints;
    Eigen::VectorXd f(27);
    system(b, f);
    double residual = f.norm();
    if (residual <= 1e-8 && e.lambda <= -1e-6) ++report.feasible;
    if (residual < report.best_residual) {
      report.best_residual = residual;
      report.best_lambda = e.lambda;
      report.best_b.assign(b.data(), b.data() + 15);
    }
  }
  return report;
}

N9Report n9_nilsoliton_obstruction_sample(int starts, std::uint64_t seed) {
  auto L = parse_structure_equations<double>(catalog_algebra("n9-nilsoliton").equations);
  return nilsoliton_obstruction_sample(L, "n9-nilsoliton", starts, seed);
}

}  // namespace g2forge
