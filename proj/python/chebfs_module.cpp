#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "chebfs/bergman.hpp"
#include "chebfs/chebyshev_potential.hpp"
#include "chebfs/cli.hpp"
#include "chebfs/errors.hpp"
#include "chebfs/hilb_gram.hpp"
#include "chebfs/mabuchi_energy.hpp"
#include "chebfs/okounkov_simplex.hpp"

namespace py = pybind11;
using namespace chebfs;

namespace {

PosDefHermitian pd(const Matrix& m) { return PosDefHermitian(m); }

std::vector<std::vector<int>> as_lists(const std::vector<MultiIndex>& points) {
  std::vector<std::vector<int>> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(p.exponents());
  return out;
}

}  // namespace

PYBIND11_MODULE(_chebfs, m) {
  m.doc() = "Chebyshev potentials of Fubini-Study metrics on projective space";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidInputError>(m, "InvalidInputError", base.ptr());
  py::register_exception<DefinitenessError>(m, "DefinitenessError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<AccuracyError>(m, "AccuracyError", base.ptr());
  py::register_exception<InconsistencyError>(m, "InconsistencyError", base.ptr());

  m.def("mu_vector", [](const Matrix& p) { return mu_vector(pd(p)); }, py::arg("p"),
        "Successive trailing-minor ratios mu_i = det_i / det_{i+1}.");
  m.def("lattice_points", [](int n, int m) { return as_lists(lattice_points(n, m)); },
        py::arg("n"), py::arg("m"), "Degree-m multi-indices in lex order.");
  m.def(
      "cheb_closed_form",
      [](const Matrix& p, std::vector<double> alpha) {
        return cheb_closed_form(ChebyshevPotentialFS::of(pd(p)), SimplexPoint{std::move(alpha)});
      },
      py::arg("p"), py::arg("alpha"));
  m.def(
      "cheb_finite_m",
      [](const Matrix& p, int m, std::vector<double> alpha) {
        return cheb_finite_m(pd(p), m, SimplexPoint{std::move(alpha)});
      },
      py::arg("p"), py::arg("m"), py::arg("alpha"));
  m.def(
      "gram_exact", [](const Matrix& p, int m) { return gram_exact(pd(p), m).entries; },
      py::arg("p"), py::arg("m"), "Closed-form Gram matrix in the lex monomial basis.");
  m.def(
      "chebyshev_norms",
      [](const Matrix& p, int m) { return chebyshev_norms(gram_exact(pd(p), m)); },
      py::arg("p"), py::arg("m"));
  m.def("bergman_offset", &bergman_offset, py::arg("n"), py::arg("m"));
  m.def(
      "bergman_exactness_defect",
      [](const RVector& d, int m) { return bergman_exactness_defect(d, m); }, py::arg("d"),
      py::arg("m"));
  m.def(
      "energy_okounkov",
      [](const Matrix& p0, const Matrix& p1) { return energy_okounkov(pd(p0), pd(p1)); },
      py::arg("p0"), py::arg("p1"));
  m.def(
      "energy_chart",
      [](const Matrix& p0, const Matrix& p1, int radial, int angular, double tol) {
        const ChartEnergy e = energy_chart(pd(p0), pd(p1), ChartScheme{radial, angular, tol});
        return py::make_tuple(e.value, e.error_estimate);
      },
      py::arg("p0"), py::arg("p1"), py::arg("radial_nodes") = 200,
      py::arg("angular_nodes") = 64, py::arg("tolerance") = 1e-6,
      "Quadrature energy; returns (value, error_estimate).");
  m.def("counterexample_report", [] { return counterexample_report().dump(); },
        "Counterexample report as a JSON string.");
  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs a CLI command; returns (exit_code, stdout, stderr).");
}
