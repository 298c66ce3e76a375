#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "heatwf/errors.hpp"
#include "heatwf/filter.hpp"
#include "heatwf/mc_sim.hpp"
#include "heatwf/params.hpp"
#include "heatwf/spectrum.hpp"
#include "heatwf/szego.hpp"
#include "heatwf/tf_plane.hpp"
#include "heatwf/waterfill.hpp"

namespace py = pybind11;
using namespace heatwf;

namespace {

IntegralMethod integral_method(const std::string& name) {
  if (name == "radial") return IntegralMethod::radial_closed_form;
  if (name == "2d") return IntegralMethod::quadrature_2d;
  throw UsageError("unknown integral method '" + name + "' (expected radial or 2d)");
}

SzegoIntegral szego_method(const std::string& name) {
  if (name == "radial") return SzegoIntegral::radial;
  if (name == "2d") return SzegoIntegral::quadrature_2d;
  throw UsageError("unknown integral method '" + name + "' (expected radial or 2d)");
}

TestFunctionSpec make_spec(const std::string& g, double a, double b, int n) {
  TestFunctionSpec s;
  s.kind = parse_test_function(g);
  s.a = a;
  s.b = b;
  s.n = n;
  return s;
}

SimConfig make_config(const FilterParams& p, double psd, std::size_t trials, std::uint64_t seed, int max_mode) {
  return SimConfig::with_default_grid(p, psd, trials, seed, max_mode);
}

// covariance as a list of rows
std::vector<std::vector<double>> square(const std::vector<double>& flat, std::size_t n) {
  std::vector<std::vector<double>> rows(n, std::vector<double>(n));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) rows[j][k] = flat[j * n + k];
  return rows;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "heatwf core bindings";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
  py::register_exception<AccuracyError>(m, "AccuracyError", PyExc_ArithmeticError);

  py::class_<FilterParams>(m, "FilterParams")
      .def_property_readonly("alpha", &FilterParams::alpha)
      .def_property_readonly("beta", &FilterParams::beta)
      .def_property_readonly("gamma", &FilterParams::gamma)
      .def_property_readonly("delta", &FilterParams::delta)
      .def_property_readonly("rho", &FilterParams::rho)
      .def_property_readonly("time_bandwidth", &FilterParams::time_bandwidth)
      .def("__repr__", [](const FilterParams& p) {
        return "FilterParams(alpha=" + format_number(p.alpha()) + ", beta=" + format_number(p.beta()) + ")";
      });

  m.def("derive_params", &derive_params, py::arg("alpha"), py::arg("beta"));
  m.def("params_from_product", &params_from_product, py::arg("ab"), py::arg("aspect") = 1.0,
        "Parameters with alpha*beta = ab and alpha/beta = aspect.");

  m.def("eigenvalue", &eigenvalue, py::arg("params"), py::arg("k"));
  m.def(
      "eigenvalues", [](const FilterParams& p, double tail_eps) { return spectrum(p, tail_eps).eigenvalues; },
      py::arg("params"), py::arg("tail_eps") = 1e-12);
  m.def("power_trace", &power_trace, py::arg("params"), py::arg("n") = 1);
  m.def("weyl_symbol", &weyl_symbol, py::arg("params"), py::arg("t"), py::arg("omega"));

  py::class_<WaterfillSolution>(m, "WaterfillSolution")
      .def_readonly("level", &WaterfillSolution::level)
      .def_readonly("active_count", &WaterfillSolution::active_count)
      .def_readonly("allocations", &WaterfillSolution::allocations)
      .def_readonly("value", &WaterfillSolution::value)
      .def_readonly("budget_check", &WaterfillSolution::budget_check);

  m.def("capacity_waterfill", &capacity_waterfill, py::arg("params"), py::arg("S"), py::arg("theta2"));
  m.def("rd_reverse_waterfill", &rd_reverse_waterfill, py::arg("params"), py::arg("D"), py::arg("sigma2") = 1.0,
        py::arg("tail_eps") = 1e-12);
  m.def("source_energy", &source_energy, py::arg("params"), py::arg("sigma2") = 1.0);
  m.def("closed_form_S", &closed_form_S, py::arg("params"), py::arg("sigma2"), py::arg("theta2"));
  m.def("closed_form_D", &closed_form_D, py::arg("params"), py::arg("sigma2"), py::arg("theta2"));

  py::class_<TFIntegralResult>(m, "TFIntegralResult")
      .def_readonly("parameter", &TFIntegralResult::parameter)
      .def_readonly("value", &TFIntegralResult::value)
      .def_readonly("ellipse_r2", &TFIntegralResult::ellipse_r2)
      .def_property_readonly("method", [](const TFIntegralResult& r) { return std::string(to_string(r.method)); });

  m.def("noise_profile", &noise_profile, py::arg("params"), py::arg("theta2"), py::arg("t"), py::arg("omega"));
  m.def("noise_floor", &noise_floor, py::arg("params"), py::arg("theta2"));
  m.def("wvs", &wvs, py::arg("params"), py::arg("sigma2"), py::arg("t"), py::arg("omega"));
  m.def(
      "capacity_integral",
      [](const FilterParams& p, double theta2, double nu, const std::string& method) {
        return capacity_integral(p, theta2, nu, integral_method(method));
      },
      py::arg("params"), py::arg("theta2"), py::arg("nu"), py::arg("method") = "radial");
  m.def(
      "power_integral",
      [](const FilterParams& p, double theta2, double nu, const std::string& method) {
        return power_integral(p, theta2, nu, integral_method(method));
      },
      py::arg("params"), py::arg("theta2"), py::arg("nu"), py::arg("method") = "radial");
  m.def(
      "rate_integral",
      [](const FilterParams& p, double sigma2, double lambda, const std::string& method) {
        return rate_integral(p, sigma2, lambda, integral_method(method));
      },
      py::arg("params"), py::arg("sigma2"), py::arg("lam"), py::arg("method") = "radial");
  m.def(
      "distortion_integral",
      [](const FilterParams& p, double sigma2, double lambda, const std::string& method) {
        return distortion_integral(p, sigma2, lambda, integral_method(method));
      },
      py::arg("params"), py::arg("sigma2"), py::arg("lam"), py::arg("method") = "radial");
  m.def("solve_nu", &solve_nu, py::arg("params"), py::arg("theta2"), py::arg("S"));
  m.def("solve_lambda", &solve_lambda, py::arg("params"), py::arg("sigma2"), py::arg("D"));

  py::class_<GallagerResult>(m, "GallagerResult")
      .def_readonly("capacity_bits", &GallagerResult::capacity_bits)
      .def_readonly("power", &GallagerResult::power)
      .def_readonly("band_edge", &GallagerResult::band_edge);
  m.def("gallager_lti", &gallager_lti, py::arg("beta"), py::arg("theta2"), py::arg("nu"));

  py::class_<SzegoReport>(m, "SzegoReport")
      .def_readonly("ab", &SzegoReport::ab)
      .def_readonly("sum_value", &SzegoReport::sum_value)
      .def_readonly("integral_value", &SzegoReport::integral_value)
      .def_readonly("gap", &SzegoReport::gap)
      .def_readonly("normalized_gap", &SzegoReport::normalized_gap)
      .def_readonly("tail_error", &SzegoReport::tail_error);

  m.def(
      "szego_gap",
      [](const std::string& g, const FilterParams& p, double a, double b, int n, double tail_eps,
         const std::string& method) { return szego_gap(make_spec(g, a, b, n), p, tail_eps, szego_method(method)); },
      py::arg("g"), py::arg("params"), py::arg("a") = 1.0, py::arg("b") = 1.0, py::arg("n") = 1,
      py::arg("tail_eps") = 1e-12, py::arg("method") = "radial");
  m.def(
      "szego_sweep",
      [](const std::string& g, const std::vector<double>& ab, double a, double b, int n, double aspect,
         double tail_rel, const std::string& method) {
        return szego_sweep(make_spec(g, a, b, n), ab, aspect, tail_rel, szego_method(method));
      },
      py::arg("g"), py::arg("ab_values"), py::arg("a") = 1.0, py::arg("b") = 1.0, py::arg("n") = 1,
      py::arg("aspect") = 1.0, py::arg("tail_rel") = 1e-12, py::arg("method") = "radial");

  py::class_<EmpiricalMoments>(m, "EmpiricalMoments")
      .def_readonly("modes", &EmpiricalMoments::modes)
      .def_readonly("n_trials", &EmpiricalMoments::n_trials)
      .def_readonly("mean", &EmpiricalMoments::mean)
      .def_readonly("mean_stderr", &EmpiricalMoments::mean_stderr)
      .def_property_readonly("covariance", [](const EmpiricalMoments& e) { return square(e.covariance, e.modes); })
      .def_property_readonly("covariance_stderr",
                             [](const EmpiricalMoments& e) { return square(e.covariance_stderr, e.modes); });

  m.def(
      "simulate_matched_filter_noise",
      [](const FilterParams& p, double psd, std::size_t trials, std::uint64_t seed, int max_mode) {
        return simulate_matched_filter_noise(make_config(p, psd, trials, seed, max_mode));
      },
      py::arg("params"), py::arg("psd") = 1.0, py::arg("trials") = 10000, py::arg("seed") = 0,
      py::arg("max_mode") = 5);
  m.def(
      "simulate_effective_noise",
      [](const FilterParams& p, double psd, std::size_t trials, std::uint64_t seed, int max_mode) {
        return simulate_effective_noise(make_config(p, psd, trials, seed, max_mode));
      },
      py::arg("params"), py::arg("psd") = 1.0, py::arg("trials") = 10000, py::arg("seed") = 0,
      py::arg("max_mode") = 5);

  py::class_<VarianceLawFit>(m, "VarianceLawFit")
      .def_readonly("slope", &VarianceLawFit::slope)
      .def_readonly("slope_stderr", &VarianceLawFit::slope_stderr)
      .def_readonly("intercept", &VarianceLawFit::intercept)
      .def_readonly("expected_slope", &VarianceLawFit::expected_slope);
  m.def("fit_variance_law", &fit_variance_law, py::arg("effective"), py::arg("params"));

  py::class_<KLSourceSample>(m, "KLSourceSample")
      .def_readonly("realizations", &KLSourceSample::realizations)
      .def_readonly("quadrature_energy", &KLSourceSample::quadrature_energy)
      .def_readonly("coefficient_energy", &KLSourceSample::coefficient_energy)
      .def_readonly("empirical_energy", &KLSourceSample::empirical_energy)
      .def_readonly("energy_stderr", &KLSourceSample::energy_stderr)
      .def_readonly("expected_energy", &KLSourceSample::expected_energy);
  m.def(
      "simulate_kl_source",
      [](const FilterParams& p, double sigma2, std::size_t trials, std::uint64_t seed, int max_mode,
         std::size_t keep) { return simulate_kl_source(make_config(p, sigma2, trials, seed, max_mode), keep); },
      py::arg("params"), py::arg("sigma2") = 1.0, py::arg("trials") = 1000, py::arg("seed") = 0,
      py::arg("max_mode") = 40, py::arg("keep") = 0);

  m.def(
      "estimate_wvs",
      [](const FilterParams& p, double sigma2, double t, double omega, int max_mode) {
        const WvsEstimate e = estimate_wvs(p, sigma2, t, omega, max_mode);
        return py::make_tuple(e.value, e.imag_residual);
      },
      py::arg("params"), py::arg("sigma2"), py::arg("t"), py::arg("omega"), py::arg("max_mode") = 40,
      "Returns (estimate, imaginary residual).");
}
