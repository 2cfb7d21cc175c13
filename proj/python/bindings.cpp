// Python bindings for the main operations. Vectors and matrices cross the
// boundary as Python lists; errors map to ValueError / ArithmeticError subclasses.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <vector>

#include "cattaneo/acceptance.hpp"
#include "cattaneo/analysis.hpp"
#include "cattaneo/asymptotics.hpp"
#include "cattaneo/core.hpp"
#include "cattaneo/errors.hpp"
#include "cattaneo/modal.hpp"
#include "cattaneo/quartic.hpp"
#include "cattaneo/version.hpp"

namespace py = pybind11;
using namespace cattaneo;

namespace {

std::vector<std::vector<double>> rows(const RealMatrix& m) {
  std::vector<std::vector<double>> out(4, std::vector<double>(4));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) out[i][j] = m(i, j);
  return out;
}

py::dict scan_dict(const ScanResult& s) {
  py::dict d;
  d["abscissae"] = s.abscissae;
  d["values"] = s.values;
  d["argmax"] = s.argmax;
  return d;
}

ScanResult scan_from(const std::vector<double>& x, const std::vector<double>& y) {
  ScanResult s;
  s.abscissae = x;
  s.values = y;
  s.argmax.assign(x.size(), 0);
  return s;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Spectral analysis of thermoelastic systems with Cattaneo heat conduction";
  m.attr("__version__") = std::string(kVersion);

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidParameters>(m, "InvalidParameters", PyExc_ValueError);
  py::register_exception<UnsupportedNormalization>(m, "UnsupportedNormalization", PyExc_ValueError);
  py::register_exception<FitRefused>(m, "FitRefused", error.ptr());
  py::register_exception<QuarticSolveError>(m, "QuarticSolveError", PyExc_ArithmeticError);

  py::class_<Parameters>(m, "Parameters")
      .def(py::init([](double alpha, double beta, double gamma, double m_, double sigma, double tau) {
             return Parameters{alpha, beta, gamma, m_, sigma, tau};
           }),
           py::arg("alpha") = 1.0, py::arg("beta") = 0.0, py::arg("gamma") = 0.5, py::arg("m") = 1.0,
           py::arg("sigma") = 2.0, py::arg("tau") = 1.0)
      .def_readwrite("alpha", &Parameters::alpha)
      .def_readwrite("beta", &Parameters::beta)
      .def_readwrite("gamma", &Parameters::gamma)
      .def_readwrite("m", &Parameters::m)
      .def_readwrite("sigma", &Parameters::sigma)
      .def_readwrite("tau", &Parameters::tau)
      .def("__eq__", &Parameters::operator==)
      .def("__repr__", [](const Parameters& p) {
        return "Parameters(alpha=" + std::to_string(p.alpha) + ", beta=" + std::to_string(p.beta) +
               ", gamma=" + std::to_string(p.gamma) + ", m=" + std::to_string(p.m) +
               ", sigma=" + std::to_string(p.sigma) + ", tau=" + std::to_string(p.tau) + ")";
      });

  m.def("validate", &validate, py::arg("p"));
  m.def(
      "classify_region",
      [](const Parameters& p) {
        const Region r = classify_region(p);
        return py::make_tuple(std::string(to_string(r.tag)), r.margin);
      },
      py::arg("p"), "(tag, margin) with tag one of InQ, OutsideQ, InQStar, OutsideQStar");
  m.def(
      "decay_exponents",
      [](const Parameters& p) {
        const DecayExponents e = decay_exponents(p);
        py::dict d;
        d["l"] = e.l;
        d["k"] = e.k;
        d["a"] = e.a;
        d["decay_exponent"] = e.decay_exponent;
        d["sharp"] = std::string(to_string(e.sharp));
        return d;
      },
      py::arg("p"));
  m.def(
      "spectrum", [](const std::string& model, std::size_t n) { return spectrum(SpectrumModel::parse(model), n); },
      py::arg("model"), py::arg("n_modes"));

  m.def(
      "char_coeffs",
      [](const Parameters& p, double mu) {
        const QuarticCoeffs c = char_coeffs(p, mu);
        return std::vector<double>{c.c4(), c.c3(), c.c2(), c.c1(), c.c0()};
      },
      py::arg("p"), py::arg("mu"), "[c4, c3, c2, c1, c0]");
  m.def(
      "solve_quartic",
      [](const std::vector<double>& c) {
        if (c.size() != 5) throw InvalidParameters("expected five coefficients c4..c0");
        const RootSet r = solve_quartic(QuarticCoeffs::from_values(c[0], c[1], c[2], c[3], c[4]));
        return std::vector<Complex>(r.roots.begin(), r.roots.end());
      },
      py::arg("coefficients"), "roots of c4 x^4 + ... + c0 from [c4, c3, c2, c1, c0]");
  m.def(
      "mode_roots",
      [](const Parameters& p, double mu) {
        const RootSet r = solve_quartic(char_coeffs(p, mu));
        return std::vector<Complex>(r.roots.begin(), r.roots.end());
      },
      py::arg("p"), py::arg("mu"));
  m.def(
      "generator", [](const Parameters& p, double mu) { return rows(modal_generator(p, mu).entries); }, py::arg("p"),
      py::arg("mu"));
  m.def(
      "modal_eigenvalues",
      [](const Parameters& p, double mu) {
        const auto e = modal_eigenvalues(modal_generator(p, mu));
        return std::vector<Complex>(e.begin(), e.end());
      },
      py::arg("p"), py::arg("mu"));
  m.def(
      "static_inverse_norm", [](const Parameters& p, double mu) { return static_inverse_norm(modal_generator(p, mu)); },
      py::arg("p"), py::arg("mu"));
  m.def(
      "predicted_branches",
      [](const Parameters& p, double mu) {
        std::vector<Complex> out;
        for (const auto& b : predicted_branches(p, mu)) out.push_back(b.value);
        return out;
      },
      py::arg("p"), py::arg("mu"));
  m.def("sharpness_product", &sharpness_product, py::arg("root"), py::arg("k"));

  m.def(
      "resolvent_norm",
      [](const Parameters& p, const std::vector<double>& modes, double s) {
        const ModeMaximum r = resolvent_norm(p, modes, s);
        return py::make_tuple(r.value, r.mode);
      },
      py::arg("p"), py::arg("modes"), py::arg("s"), "(norm, index of the maximizing mode)");
  m.def("semigroup_observable", py::overload_cast<const Parameters&, double, double>(&semigroup_observable),
        py::arg("p"), py::arg("mu"), py::arg("t"));
  m.def(
      "scan_resolvent",
      [](const Parameters& p, const std::vector<double>& modes, const std::vector<double>& s, unsigned threads) {
        return scan_dict(scan_resolvent(p, modes, s, threads));
      },
      py::arg("p"), py::arg("modes"), py::arg("s_grid"), py::arg("threads") = 1);
  m.def(
      "scan_resolvent_peaks",
      [](const Parameters& p, const std::vector<double>& modes, unsigned threads) {
        return scan_dict(scan_resolvent_peaks(mode_spectra(p, modes, threads), threads));
      },
      py::arg("p"), py::arg("modes"), py::arg("threads") = 1);
  m.def(
      "decay_envelope",
      [](const Parameters& p, const std::vector<double>& modes, const std::vector<double>& t, unsigned threads) {
        return scan_dict(decay_envelope(p, modes, t, threads));
      },
      py::arg("p"), py::arg("modes"), py::arg("t_grid"), py::arg("threads") = 1);
  m.def(
      "default_decay_window",
      [](const Parameters& p, const std::vector<double>& modes) {
        const FitWindow w = default_decay_window(mode_spectra(p, modes));
        return py::make_tuple(w.lo, w.hi);
      },
      py::arg("p"), py::arg("modes"));
  m.def(
      "fit_powerlaw",
      [](const std::vector<double>& x, const std::vector<double>& y, std::optional<std::pair<double, double>> window) {
        const ScanResult s = scan_from(x, y);
        const FitWindow w = window ? FitWindow{window->first, window->second} : auto_window(s);
        const FitResult f = fit_powerlaw(s, w);
        py::dict d;
        d["slope"] = f.slope;
        d["intercept"] = f.intercept;
        d["r_squared"] = f.r_squared;
        d["window"] = py::make_tuple(f.window.lo, f.window.hi);
        d["points"] = f.points;
        return d;
      },
      py::arg("x"), py::arg("y"), py::arg("window") = py::none(),
      "least squares in log-log coordinates; the automatic dyadic window when none is given");

  m.def(
      "run_acceptance",
      [](std::uint64_t seed, unsigned threads) {
        std::vector<CriterionResult> results;
        {
          py::gil_scoped_release release;
          results = run_criteria({seed, threads});
        }
        py::list out;
        for (const auto& r : results) {
          py::dict d;
          d["id"] = r.id;
          d["title"] = r.title;
          d["pass"] = r.pass();
          py::list checks;
          for (const auto& c : r.checks) checks.append(py::make_tuple(c.name, c.measured, c.tolerance, c.pass));
          d["checks"] = checks;
          out.append(d);
        }
        return out;
      },
      py::arg("seed") = 20240601, py::arg("threads") = 1, "criteria 1..12 as a list of dicts");
}
