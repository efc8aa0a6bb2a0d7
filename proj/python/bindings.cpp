#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "g2forge/app.hpp"
#include "g2forge/catalog.hpp"

namespace py = pybind11;
using namespace g2forge;

namespace {

app::Options options(const std::optional<std::string>& ring, double tol, std::uint64_t seed) {
  app::Options o;
  o.ring = app::parse_ring_choice(ring.value_or("natural"));
  o.tol = tol;
  o.seed = seed;
  return o;
}

KForm<Rational> exact_form(const std::string& text, int dim, int degree) {
  auto f = load_form(text, dim, degree);
  if (ring_of(f) != Ring::rational) throw PreconditionError("expected rational coefficients");
  return f.map([](const Scalar& s) { return convert<Rational>(s); });
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Invariant SU(3)- and G2-structures on Lie algebras";

  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  const double tol = kDefaultTolerance;
  m.def("algebra_list", [] { return app::algebra_list().dump(); });
  m.def(
      "algebra_show", [](const std::string& a, std::optional<std::string> ring) {
        return app::algebra_show(a, options(ring, kDefaultTolerance, 1)).dump();
      },
      py::arg("algebra"), py::arg("ring") = py::none());
  m.def(
      "su3_check",
      [](const std::string& a, const std::string& omega, const std::string& sigma, bool lenient,
         std::optional<std::string> ring, double t) {
        return app::su3_check(a, omega, sigma, lenient, options(ring, t, 1)).dump();
      },
      py::arg("algebra"), py::arg("omega"), py::arg("sigma"), py::arg("lenient") = false, py::arg("ring") = py::none(),
      py::arg("tol") = tol);
  m.def(
      "metric_analyze",
      [](const std::string& a, std::optional<std::string> metric, std::optional<std::string> ring, double t) {
        return app::metric_analyze(a, metric, options(ring, t, 1)).dump();
      },
      py::arg("algebra"), py::arg("metric") = py::none(), py::arg("ring") = py::none(), py::arg("tol") = tol);
  m.def(
      "g2_analyze",
      [](const std::string& a, const std::string& phi, const std::string& orientation, std::optional<std::string> ring,
         double t) {
        if (orientation != "coframe" && orientation != "induced")
          throw PreconditionError("orientation must be coframe or induced");
        return app::g2_analyze(a, phi, orientation == "induced" ? G2Orientation::induced : G2Orientation::coframe,
                               options(ring, t, 1))
            .dump();
      },
      py::arg("algebra"), py::arg("phi"), py::arg("orientation") = "coframe", py::arg("ring") = py::none(),
      py::arg("tol") = tol);
  m.def(
      "lambda_table", [](std::uint64_t seed) { return app::lambda_table(options(std::nullopt, kDefaultTolerance, seed)).dump(); },
      py::arg("seed") = 1);
  m.def(
      "obstruction",
      [](const std::string& which, int trials, std::uint64_t seed) {
        return app::obstruction(which, trials, options(std::nullopt, kDefaultTolerance, seed)).dump();
      },
      py::arg("which"), py::arg("trials"), py::arg("seed") = 1);
  m.def(
      "reproduce",
      [](std::optional<std::string> only, std::optional<std::string> ring, double t) {
        app::ReproduceOptions r;
        r.only = only;
        return app::reproduce(options(ring, t, 1), r).dump();
      },
      py::arg("only") = py::none(), py::arg("ring") = py::none(), py::arg("tol") = tol);
  m.def(
      "check_scenario",
      [](const std::string& text, double t) {
        return app::check_scenario(app::parse_scenario(text), options(std::nullopt, t, 1), "<string>").dump();
      },
      py::arg("text"), py::arg("tol") = tol);

  m.def(
      "hitchin_lambda", [](const std::string& sigma) { return to_string(hitchin_lambda(exact_form(sigma, 6, 3))); },
      py::arg("sigma"));
  m.def(
      "wedge",
      [](const std::string& a, const std::string& b, int dim) {
        return render(wedge(exact_form(a, dim, 1), exact_form(b, dim, 1)));
      },
      py::arg("a"), py::arg("b"), py::arg("dim"));
  m.def(
      "differential",
      [](const std::string& algebra, const std::string& form) {
        auto L = std::get<LieAlgebra<Rational>>(load_algebra(algebra, Ring::rational));
        return render(L.differential(exact_form(form, L.dim(), 1)));
      },
      py::arg("algebra"), py::arg("form"));
}
