#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qherm/evolution.hpp"
#include "qherm/factorization.hpp"
#include "qherm/family.hpp"
#include "qherm/metrics.hpp"
#include "qherm/model.hpp"
#include "qherm/operators.hpp"
#include "qherm/scenario.hpp"
#include "qherm/spectral.hpp"

namespace py = pybind11;
using namespace qherm;

namespace {

Space space_from(const std::string& s) {
  if (s == "F") return Space::F;
  if (s == "R") return Space::R;
  if (s == "H") return Space::H;
  throw py::value_error("space must be one of 'F', 'R', 'H'");
}

py::tuple residual_tuple(const Residual& r) {
  return py::make_tuple<py::return_value_policy::copy>(r.abs, r.rel);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Metric operators, pseudometric x charge factorization and the "
            "first-order-charge differential family";
  m.attr("__version__") = kVersion;

  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);

  // operators
  m.def("adjoint", &adjoint, py::arg("a"));
  m.def("time_reversal", &time_reversal, py::arg("a"));
  m.def(
      "adjoint_wrt",
      [](const Operator& a, const Operator& metric) {
        return adjoint_wrt(a, metric);
      },
      py::arg("a"), py::arg("metric"));
  m.def("inner", &inner, py::arg("metric"), py::arg("v1"), py::arg("v2"));
  m.def("parity_matrix", &parity_matrix, py::arg("n"));

  // spectral
  py::class_<SpectralData>(m, "SpectralData")
      .def_readonly("eigenvalues", &SpectralData::eigenvalues)
      .def_readonly("right", &SpectralData::right)
      .def_readonly("left", &SpectralData::left)
      .def_readonly("min_gap", &SpectralData::min_gap);
  m.def("eigendecompose", &eigendecompose, py::arg("a"),
        py::arg("gap_floor") = py::none());
  m.def(
      "is_real_spectrum",
      [](const SpectralData& s, double tol) {
        const auto r = is_real_spectrum(s, tol);
        return py::make_tuple<py::return_value_policy::copy>(r.real, r.max_imag);
      },
      py::arg("spectrum"), py::arg("tol") = 1e-10);

  // metrics
  py::class_<MetricCandidate>(m, "MetricCandidate")
      .def_readonly("theta", &MetricCandidate::theta)
      .def_readonly("min_eig", &MetricCandidate::min_eig)
      .def_readonly("max_eig", &MetricCandidate::max_eig)
      .def_readonly("positive", &MetricCandidate::positive)
      .def_readonly("weights", &MetricCandidate::weights);
  m.def(
      "qh_residual",
      [](const Operator& h, const Operator& theta) {
        return residual_tuple(qh_residual(h, theta));
      },
      py::arg("h"), py::arg("theta"));
  m.def(
      "spectral_metric",
      [](const SpectralData& s, std::vector<double> w) {
        return spectral_metric(s, std::move(w));
      },
      py::arg("spectrum"), py::arg("weights") = std::vector<double>{});
  m.def(
      "positivity_certificate",
      [](const Operator& metric) {
        const auto c = positivity_certificate(metric);
        return py::make_tuple<py::return_value_policy::copy>(c.min_eig, c.positive);
      },
      py::arg("metric"));
  m.def("hermitize", &hermitize, py::arg("h"), py::arg("theta"));
  m.def(
      "observability_check",
      [](const Operator& a, const Operator& theta) {
        return residual_tuple(observability_check(a, theta));
      },
      py::arg("a"), py::arg("theta"));

  // factorization
  m.def(
      "signature",
      [](const Operator& p) {
        const auto s = signature(p);
        return py::make_tuple<py::return_value_policy::copy>(s.positive, s.negative);
      },
      py::arg("p"));
  m.def(
      "pt_symmetry_residual",
      [](const Operator& h, const Operator& p) {
        return residual_tuple(pt_symmetry_residual(h, PseudoMetric(p)));
      },
      py::arg("h"), py::arg("p"));
  m.def(
      "charge_from_metric",
      [](const Operator& theta, const Operator& p) {
        return charge_from_metric(theta, PseudoMetric(p));
      },
      py::arg("theta"), py::arg("p"));
  m.def(
      "standard_charge",
      [](const Operator& h, const Operator& p) {
        auto sc = standard_charge(h, PseudoMetric(p));
        return py::make_tuple<py::return_value_policy::copy>(sc.charge, sc.theta);
      },
      py::arg("h"), py::arg("p"));
  m.def(
      "triple_inner",
      [](const Operator& p, const Operator& c, const std::string& space,
         const StateVector& v1, const StateVector& v2) {
        return triple_inner(SpaceTriple(PseudoMetric(p), c), space_from(space),
                            v1, v2);
      },
      py::arg("p"), py::arg("c"), py::arg("space"), py::arg("v1"),
      py::arg("v2"));
  m.def(
      "conjugation_in",
      [](const Operator& p, const Operator& c, const std::string& space,
         const Operator& a) {
        return conjugation_in(SpaceTriple(PseudoMetric(p), c),
                              space_from(space), a);
      },
      py::arg("p"), py::arg("c"), py::arg("space"), py::arg("a"));
  m.def(
      "verify_table",
      [](const Operator& p, const Operator& c, const Operator& h, double tol) {
        const TableReport t = verify_table(SpaceTriple(PseudoMetric(p), c), h,
                                           tol);
        py::list rows;
        for (const auto& r : t.rows) {
          rows.append(py::make_tuple<py::return_value_policy::copy>(r.relation, r.abs, r.rel, r.pass));
        }
        py::dict out;
        out["rows"] = rows;
        out["signature"] =
            py::make_tuple<py::return_value_policy::copy>(t.signature.positive, t.signature.negative);
        out["theta_min_eig"] = t.theta_min_eig;
        out["reading"] = t.reading();
        return out;
      },
      py::arg("p"), py::arg("c"), py::arg("h"), py::arg("tol") = 1e-10);

  // differential family
  py::class_<Grid>(m, "Grid")
      .def_readonly("half_width", &Grid::half_width)
      .def_readonly("points", &Grid::points)
      .def_readonly("spacing", &Grid::spacing)
      .def_readonly("x", &Grid::x);
  py::class_<ChargeAnsatz>(m, "ChargeAnsatz")
      .def_readonly("sigma", &ChargeAnsatz::sigma)
      .def_readonly("alpha", &ChargeAnsatz::alpha)
      .def_readonly("omega", &ChargeAnsatz::omega);
  m.def("make_grid", &make_grid, py::arg("half_width"), py::arg("points"));
  m.def("make_ansatz", &make_ansatz, py::arg("grid"), py::arg("sigma"),
        py::arg("alpha"), py::arg("omega") = 0.0);
  m.def(
      "forward_family",
      [](const ChargeAnsatz& a) {
        auto f = forward_family(a);
        return py::make_tuple<py::return_value_policy::copy>(f.s, f.lambda);
      },
      py::arg("ansatz"));
  m.def("inverse_family", &inverse_family, py::arg("s"), py::arg("lam"),
        py::arg("omega"), py::arg("grid"), py::arg("branch") = 1);
  m.def("discretize_hamiltonian", &discretize_hamiltonian, py::arg("grid"),
        py::arg("v"));
  m.def(
      "discretize_charge",
      [](const Grid& g, const RealSamples& sigma, const RealSamples& alpha) {
        return discretize_charge(g, sigma, alpha);
      },
      py::arg("grid"), py::arg("sigma"), py::arg("alpha"));
  m.def(
      "coefficient_match",
      [](const ChargeAnsatz& a, const Grid& g) {
        const auto c = coefficient_match(a, required_split(a, g), g);
        return py::make_tuple<py::return_value_policy::copy>(c.order[0], c.order[1], c.order[2], c.order[3]);
      },
      py::arg("ansatz"), py::arg("grid"),
      "Per-order coefficient residuals (D0..D3) for the forced potential.");
  m.def(
      "charge_pg_hermiticity",
      [](const ChargeAnsatz& a, const Grid& g) {
        return charge_pg_hermiticity(a, g);
      },
      py::arg("ansatz"), py::arg("grid"));

  // evolution
  m.def(
      "propagate",
      [](const Operator& h, const StateVector& psi0,
         const std::vector<double>& times) {
        return propagate(h, psi0, times).states;
      },
      py::arg("h"), py::arg("psi0"), py::arg("times"));

  // scenarios
  m.def(
      "run_scenario",
      [](const std::string& model_json, const std::string& task, double tol) {
        const auto t = task_from_string(task);
        if (!t) throw py::value_error("unknown task '" + task + "'");
        ScenarioOptions opt;
        opt.tol = tol;
        const Report r = run_scenario(parse_model_text(model_json), *t, opt);
        return py::make_tuple<py::return_value_policy::copy>(to_json(r), exit_code(r));
      },
      py::arg("model_json"), py::arg("task"), py::arg("tol") = 1e-10,
      "Runs a task on a JSON model; returns (report_json, exit_code).");
}
