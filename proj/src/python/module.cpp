// Python bindings: the evaluators and experiments, with configuration given
// as a {"section.key": value} dict exactly like the CLI overrides.

#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "tfse/config.hpp"
#include "tfse/errors.hpp"
#include "tfse/experiments.hpp"
#include "tfse/mittag_leffler.hpp"
#include "tfse/msd.hpp"
#include "tfse/wellposed.hpp"

namespace py = pybind11;
using namespace tfse;

namespace {

ConfigMap to_config_map(const py::dict& d) {
  ConfigMap m;
  for (auto [k, v] : d) {
    std::string value;
    if (py::isinstance<py::bool_>(v))
      value = v.cast<bool>() ? "true" : "false";
    else
      value = py::str(v).cast<std::string>();
    m[k.cast<std::string>()] = value;
  }
  return m;
}

RunConfig config_from(const py::dict& overrides) { return build_config({}, to_config_map(overrides)); }

py::dict breakdown_dict(const MSDBreakdown& b) {
  py::dict d;
  d["A"] = b.A;
  d["B"] = b.B;
  d["C"] = b.C;
  d["F"] = b.F;
  d["total"] = b.total;
  return d;
}

}  // namespace

PYBIND11_MODULE(tfse, m) {
  m.doc() = "Time-fractional Schrodinger edge currents on the half-plane";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<NonConvergence>(m, "NonConvergence", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<GridError>(m, "GridError", base.ptr());
  py::register_exception<WindowViolation>(m, "WindowViolation", base.ptr());
  py::register_exception<OverflowGuard>(m, "OverflowGuard", base.ptr());
  py::register_exception<QuadratureError>(m, "QuadratureError", base.ptr());
  py::register_exception<SignChange>(m, "SignChange", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<IOError>(m, "IOError", base.ptr());

  m.def("gamma_reciprocal", &gamma_reciprocal, py::arg("x"));
  m.def(
      "ml_eval",
      [](double alpha, double sigma, Complex z) { return ml_eval({alpha, sigma}, z); },
      py::arg("alpha"), py::arg("sigma"), py::arg("z"));
  m.def(
      "ml_log_abs",
      [](double alpha, double sigma, Complex z) { return MittagLeffler({alpha, sigma}).scaled(z).log_abs(); },
      py::arg("alpha"), py::arg("sigma"), py::arg("z"), "ln|E_{alpha,sigma}(z)|, finite past the double range.");
  m.def("ml_deriv", [](double alpha, Complex z) { return ml_deriv(alpha, z); }, py::arg("alpha"), py::arg("z"));

  m.def(
      "ground_state",
      [](double k, double b, double L, int n) {
        const ModelParams model{b};
        const HalfLineGrid grid = L > 0.0 ? HalfLineGrid{L, n} : HalfLineGrid::automatic(model, std::abs(k), n);
        const GroundState g = solve_with_derivative(model, k, grid);
        py::dict d;
        d["lambda1"] = g.lambda1;
        d["dlambda1"] = g.dlambda1;
        d["phi_cap"] = g.phi_cap;
        d["phi1"] = g.phi1;
        d["h"] = grid.h();
        return d;
      },
      py::arg("k"), py::arg("b") = 1.0, py::arg("L") = 0.0, py::arg("n") = 4000);

  py::class_<EdgeSystem>(m, "EdgeSystem", "Model, cutoff and tabulated spectral data; build once, reuse for every t.")
      .def(py::init([](double b, double k_min, double k_max, double amplitude, int n_nodes) {
             return EdgeSystem({b}, {k_min, k_max, amplitude}, {0.0, 4000},
                               QuadConfig{static_cast<std::size_t>(n_nodes)});
           }),
           py::arg("b") = 1.0, py::arg("k_min") = 1.0, py::arg("k_max") = 2.0, py::arg("amplitude") = 1.0,
           py::arg("n_nodes") = 64)
      .def_property_readonly("lambda_max", &EdgeSystem::lambda_max)
      .def_property_readonly("lambda_min", &EdgeSystem::lambda_min);

  m.def(
      "current_direct", [](double a, double b, const EdgeSystem& s, double t) { return current_direct({a, b}, s, t); },
      py::arg("alpha"), py::arg("beta"), py::arg("system"), py::arg("t"));
  m.def(
      "current_log_abs",
      [](double a, double b, const EdgeSystem& s, double t) {
        const ScaledReal v = current_direct_scaled({a, b}, s, t);
        return py::make_tuple(v.sign(), v.log_abs());
      },
      py::arg("alpha"), py::arg("beta"), py::arg("system"), py::arg("t"), "(sign, ln|J|) without overflow.");
  m.def("current_schrodinger", &current_schrodinger, py::arg("system"));
  m.def("naber_constant", &naber_constant, py::arg("alpha"), py::arg("system"));
  m.def("ayh_coefficient", &ayh_coefficient, py::arg("alpha"), py::arg("system"));
  m.def("case2_bracket", &case2_bracket, py::arg("alpha"));
  m.def(
      "classify_regime",
      [](double a, double b) {
        const RegimeClass r = classify_regime({a, b});
        return py::make_tuple(r.name(), r.exponent);
      },
      py::arg("alpha"), py::arg("beta"));

  m.def(
      "msd_direct",
      [](double a, double b, const EdgeSystem& s, double t) { return breakdown_dict(msd_direct({a, b}, s, t)); },
      py::arg("alpha"), py::arg("beta"), py::arg("system"), py::arg("t"));
  m.def("msd_naber_leading", &msd_naber_leading, py::arg("alpha"), py::arg("system"));
  m.def(
      "msd_case2_leading", [](double a, double b, const EdgeSystem& s) { return msd_case2_leading({a, b}, s); },
      py::arg("alpha"), py::arg("beta"), py::arg("system"));

  m.def(
      "envelope", [](double a, double b, double lambda, double t) { return envelope({a, b}, lambda, t); },
      py::arg("alpha"), py::arg("beta"), py::arg("lambda_"), py::arg("t"));
  m.def(
      "solution_norm_sq",
      [](double a, double b, const std::vector<std::pair<double, double>>& modes, double t) {
        ModeSpectrum s;
        for (auto [l, w] : modes) s.modes.push_back({l, w});
        return solution_norm_sq({a, b}, s, t);
      },
      py::arg("alpha"), py::arg("beta"), py::arg("modes"), py::arg("t"), "modes: [(lambda, weight), ...]");

  m.def(
      "config", [](const py::dict& o) { return describe(config_from(o)); }, py::arg("overrides") = py::dict(),
      "Validated configuration as section.key=value lines.");
  m.def(
      "run_regimes",
      [](const py::dict& o) {
        const RegimesReport r = run_regimes(config_from(o));
        py::list rows;
        for (const auto& row : r.rows) {
          py::dict d;
          d["beta"] = row.beta;
          d["regime_predicted"] = row.predicted.name();
          d["fitted_slope"] = row.fitted_slope;
          d["expected"] = row.expected;
          d["pass"] = row.pass;
          d["detail"] = row.detail;
          rows.append(d);
        }
        return rows;
      },
      py::arg("overrides") = py::dict());
  m.def(
      "csv",
      [](const std::string& what, const py::dict& o) {
        const RunConfig c = config_from(o);
        if (what == "spectrum") return spectrum_table(c).str();
        if (what == "current") return current_table(c).str();
        if (what == "msd") return msd_table(c).str();
        if (what == "regimes") return regimes_table(run_regimes(c)).str();
        if (what == "verify") return verify_table(run_verify(c)).str();
        throw DomainError("unknown table '" + what + "'");
      },
      py::arg("table"), py::arg("overrides") = py::dict(),
      "CSV text of one of: spectrum, current, msd, regimes, verify.");
}
