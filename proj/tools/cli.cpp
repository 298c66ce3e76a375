#include "cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <ostream>
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

namespace heatwf::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kToolVersion = "0.1.0";

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// nlohmann prints the shortest round-trip form; manifests use 17 digits
void write_json(const json& j, std::ostream& out) {
  if (j.is_object()) {
    out << '{';
    bool first = true;
    for (const auto& [key, value] : j.items()) {
      if (!first) out << ',';
      first = false;
      out << json(key).dump() << ':';
      write_json(value, out);
    }
    out << '}';
  } else if (j.is_array()) {
    out << '[';
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) out << ',';
      write_json(j[i], out);
    }
    out << ']';
  } else if (j.is_number_float()) {
    const double v = j.get<double>();
    if (std::isfinite(v)) {
      out << fmt17(v);
    } else {
      out << "null";
    }
  } else {
    out << j.dump();
  }
}

struct Manifest {
  std::string command;
  json inputs = json::object();
  json outputs = json::object();
};

void emit(const Manifest& m, bool as_json, std::ostream& out) {
  if (as_json) {
    json doc;
    doc["command"] = m.command;
    doc["inputs"] = m.inputs;
    doc["outputs"] = m.outputs;
    doc["tool_version"] = kToolVersion;
    doc["timestamp"] = utc_timestamp();
    write_json(doc, out);
    out << '\n';
    return;
  }
  out << m.command << '\n';
  for (const auto& [key, value] : m.outputs.items()) {
    out << "  " << key << " = ";
    if (value.is_number_float()) {
      out << fmt17(value.get<double>());
    } else if (value.is_string()) {
      out << value.get<std::string>();
    } else {
      write_json(value, out);
    }
    out << '\n';
  }
}

/// CSV with a fixed header row; floats with 17 significant digits.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header) : file_(path) {
    if (!file_) throw UsageError("cannot open CSV output '" + path + "'");
    for (std::size_t i = 0; i < header.size(); ++i) file_ << (i ? "," : "") << header[i];
    file_ << '\n';
  }
  void row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) file_ << (i ? "," : "") << fmt17(values[i]);
    file_ << '\n';
  }

 private:
  std::ofstream file_;
};

// --alpha/--beta or --ab/--aspect
struct FilterOptions {
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<double> ab;
  double aspect = 1.0;

  void add_to(CLI::App* app) {
    app->add_option("--alpha", alpha, "time scale alpha > 0");
    app->add_option("--beta", beta, "frequency scale beta > 0");
    app->add_option("--ab", ab, "time-frequency product alpha*beta (alternative to --alpha/--beta)");
    app->add_option("--aspect", aspect, "alpha/beta ratio used with --ab")->capture_default_str();
  }

  FilterParams resolve() const {
    if (ab) {
      if (alpha || beta) throw UsageError("give either --ab or --alpha/--beta, not both");
      return params_from_product(*ab, aspect);
    }
    if (!alpha || !beta) throw UsageError("--alpha and --beta (or --ab) are required");
    return derive_params(*alpha, *beta);
  }
};

void record_params(json& j, const FilterParams& p) {
  j["alpha"] = p.alpha();
  j["beta"] = p.beta();
}

json params_json(const FilterParams& p) {
  json j;
  j["alpha"] = p.alpha();
  j["beta"] = p.beta();
  j["gamma"] = p.gamma();
  j["delta"] = p.delta();
  j["rho"] = p.rho();
  j["time_bandwidth"] = p.time_bandwidth();
  j["cosh_delta"] = p.cosh_delta();
  j["trace"] = power_trace(p, 1);
  return j;
}

double unit_factor(const std::string& units) { return units == "bits" ? 1.0 / std::log(2.0) : 1.0; }

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  if (n == 1) return {0.5 * (lo + hi)};
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return out;
}

// ---------------------------------------------------------------- commands

struct CapacityOptions {
  FilterOptions filter;
  double S = 0.0;
  double theta2 = 0.0;
  std::string method = "exact";
  std::string units = "nats";
  std::optional<double> nu;
};

Manifest cmd_capacity(const CapacityOptions& o) {
  const FilterParams p = o.filter.resolve();
  Manifest m{"capacity"};
  record_params(m.inputs, p);
  m.inputs["S"] = o.S;
  m.inputs["theta2"] = o.theta2;
  m.inputs["method"] = o.method;
  m.inputs["units"] = o.units;
  if (o.nu) m.inputs["nu"] = *o.nu;
  const double scale = unit_factor(o.units);
  m.outputs["units"] = o.units;

  std::optional<double> exact;
  std::optional<double> tf;
  if (o.method == "exact" || o.method == "both") {
    const WaterfillSolution sol = capacity_waterfill(p, o.S, o.theta2);
    exact = sol.value * scale;
    m.outputs["capacity_exact"] = *exact;
    m.outputs["water_level"] = sol.level;
    m.outputs["active_count"] = sol.active_count;
    m.outputs["budget_check"] = sol.budget_check;
  }
  if (o.method == "tf" || o.method == "both") {
    if (!(o.theta2 > 0.0)) throw DomainError("theta^2 must be positive");
    double nu = noise_floor(p, o.theta2);
    if (o.nu) {
      nu = *o.nu;
    } else if (o.S > 0.0) {
      nu = solve_nu(p, o.theta2, o.S);
    }
    const TFIntegralResult c = capacity_integral(p, o.theta2, nu);
    const TFIntegralResult s = power_integral(p, o.theta2, nu);
    tf = c.value * scale;
    m.outputs["nu"] = nu;
    m.outputs["nu_source"] = o.nu ? "given" : "solved";
    m.outputs["capacity_tf"] = *tf;
    m.outputs["power_tf"] = s.value;
    m.outputs["ellipse_r2"] = c.ellipse_r2;
  }
  if (exact && tf) {
    m.outputs["gap"] = *exact - *tf;
    m.outputs["normalized_gap"] = (*exact - *tf) / p.time_bandwidth();
  }
  return m;
}

struct RateOptions {
  FilterOptions filter;
  double D = 0.0;
  double sigma2 = 1.0;
  std::string method = "exact";
  std::string units = "nats";
  std::optional<double> lambda;
};

Manifest cmd_rd(const RateOptions& o) {
  const FilterParams p = o.filter.resolve();
  Manifest m{"rd"};
  record_params(m.inputs, p);
  m.inputs["D"] = o.D;
  m.inputs["sigma2"] = o.sigma2;
  m.inputs["method"] = o.method;
  m.inputs["units"] = o.units;
  if (o.lambda) m.inputs["lambda"] = *o.lambda;
  const double scale = unit_factor(o.units);
  m.outputs["units"] = o.units;
  m.outputs["energy"] = source_energy(p, o.sigma2);

  std::optional<double> exact;
  std::optional<double> tf;
  if (o.method == "exact" || o.method == "both") {
    const WaterfillSolution sol = rd_reverse_waterfill(p, o.D, o.sigma2);
    exact = sol.value * scale;
    m.outputs["rate_exact"] = *exact;
    m.outputs["water_table"] = sol.level;
    m.outputs["active_count"] = sol.active_count;
    m.outputs["budget_check"] = sol.budget_check;
  }
  if (o.method == "tf" || o.method == "both") {
    const double lambda = o.lambda ? *o.lambda : solve_lambda(p, o.sigma2, o.D);
    const TFIntegralResult r = rate_integral(p, o.sigma2, lambda);
    const TFIntegralResult d = distortion_integral(p, o.sigma2, lambda);
    tf = r.value * scale;
    m.outputs["lambda"] = lambda;
    m.outputs["lambda_source"] = o.lambda ? "given" : "solved";
    m.outputs["rate_tf"] = *tf;
    m.outputs["distortion_tf"] = d.value;
    m.outputs["ellipse_r2"] = r.ellipse_r2;
  }
  if (exact && tf) {
    m.outputs["gap"] = *exact - *tf;
    m.outputs["normalized_gap"] = (*exact - *tf) / p.time_bandwidth();
  }
  return m;
}

struct SzegoOptions {
  std::string g;
  int n = 1;
  double a = 1.0;
  double b = 1.0;
  std::vector<double> ab_list;
  double aspect = 1.0;
  double tail_rel = 1e-12;
  std::string integral = "radial";
  std::string csv;
};

Manifest cmd_szego(const SzegoOptions& o) {
  TestFunctionSpec spec;
  spec.kind = parse_test_function(o.g);
  spec.n = o.n;
  spec.a = o.a;
  spec.b = o.b;
  Manifest m{"szego"};
  m.inputs["g"] = to_string(spec.kind);
  m.inputs["n"] = o.n;
  m.inputs["a"] = o.a;
  m.inputs["b"] = o.b;
  m.inputs["ab_list"] = o.ab_list;
  m.inputs["aspect"] = o.aspect;
  m.inputs["tail_rel"] = o.tail_rel;
  m.inputs["integral"] = o.integral;
  const auto method = o.integral == "2d" ? SzegoIntegral::quadrature_2d : SzegoIntegral::radial;
  const auto reports = szego_sweep(spec, o.ab_list, o.aspect, o.tail_rel, method);

  json rows = json::array();
  for (const SzegoReport& r : reports) {
    rows.push_back({{"ab", r.ab},
                    {"sum_value", r.sum_value},
                    {"integral_value", r.integral_value},
                    {"gap", r.gap},
                    {"normalized_gap", r.normalized_gap},
                    {"tail_error", r.tail_error}});
  }
  m.outputs["reports"] = rows;
  if (!o.csv.empty()) {
    CsvWriter csv(o.csv, {"ab", "sum_value", "integral_value", "gap", "normalized_gap", "tail_error"});
    for (const SzegoReport& r : reports) csv.row({r.ab, r.sum_value, r.integral_value, r.gap, r.normalized_gap, r.tail_error});
    m.outputs["csv_path"] = o.csv;
    m.outputs["csv_schema"] = "szego_sweep/1";
  }
  return m;
}

struct SimulateOptions {
  FilterOptions filter;
  std::string kind = "noise";
  std::uint64_t seed = 0;
  std::size_t trials = 10000;
  double psd = 1.0;
  std::optional<int> max_mode;
  std::size_t points = 5;
  std::string csv;
};

Manifest cmd_simulate(const SimulateOptions& o) {
  const FilterParams p = o.filter.resolve();
  Manifest m{"simulate"};
  record_params(m.inputs, p);
  m.inputs["kind"] = o.kind;
  m.inputs["seed"] = o.seed;
  m.inputs["trials"] = o.trials;
  m.inputs["psd"] = o.psd;

  if (o.kind == "noise") {
    const int max_mode = o.max_mode.value_or(5);
    m.inputs["max_mode"] = max_mode;
    const SimConfig cfg = SimConfig::with_default_grid(p, o.psd, o.trials, o.seed, max_mode);
    const EmpiricalMoments matched = simulate_matched_filter_noise(cfg);
    const EmpiricalMoments effective = simulate_effective_noise(cfg);
    json matched_var = json::array();
    json effective_var = json::array();
    json effective_expected = json::array();
    double max_offdiag_z = 0.0;
    for (std::size_t j = 0; j < matched.modes; ++j) {
      matched_var.push_back(matched.cov(j, j));
      effective_var.push_back(effective.cov(j, j));
      effective_expected.push_back(noise_variance(p, o.psd, j));
      for (std::size_t k = j + 1; k < matched.modes; ++k) {
        if (matched.cov_stderr(j, k) > 0.0) {
          max_offdiag_z = std::max(max_offdiag_z, std::abs(matched.cov(j, k)) / matched.cov_stderr(j, k));
        }
      }
    }
    const VarianceLawFit fit = fit_variance_law(effective, p);
    m.outputs["matched_variance"] = matched_var;
    m.outputs["matched_max_offdiag_z"] = max_offdiag_z;
    m.outputs["effective_variance"] = effective_var;
    m.outputs["effective_expected"] = effective_expected;
    m.outputs["variance_law_slope"] = fit.slope;
    m.outputs["variance_law_slope_stderr"] = fit.slope_stderr;
    m.outputs["variance_law_expected_slope"] = fit.expected_slope;
    if (!o.csv.empty()) {
      CsvWriter csv(o.csv, {"statistic", "mode_j", "mode_k", "covariance", "stderr", "expected"});
      for (int which = 0; which < 2; ++which) {
        const EmpiricalMoments& mm = which == 0 ? matched : effective;
        for (std::size_t j = 0; j < mm.modes; ++j) {
          for (std::size_t k = 0; k < mm.modes; ++k) {
            const double expected = j != k ? 0.0 : (which == 0 ? o.psd : noise_variance(p, o.psd, j));
            csv.row({static_cast<double>(which), static_cast<double>(j), static_cast<double>(k), mm.cov(j, k),
                     mm.cov_stderr(j, k), expected});
          }
        }
      }
      m.outputs["csv_path"] = o.csv;
      m.outputs["csv_schema"] = "simulate_noise/1";
    }
  } else if (o.kind == "source") {
    const int max_mode = o.max_mode.value_or(40);
    m.inputs["max_mode"] = max_mode;
    const SimConfig cfg = SimConfig::with_default_grid(p, o.psd, o.trials, o.seed, max_mode);
    const KLSourceSample s = simulate_kl_source(cfg);
    double parseval = 0.0;
    for (std::size_t i = 0; i < s.quadrature_energy.size(); ++i) {
      if (s.coefficient_energy[i] > 0.0) {
        parseval = std::max(parseval, std::abs(s.quadrature_energy[i] / s.coefficient_energy[i] - 1.0));
      }
    }
    m.outputs["empirical_energy"] = s.empirical_energy;
    m.outputs["energy_stderr"] = s.energy_stderr;
    m.outputs["expected_energy_truncated"] = s.expected_energy;
    m.outputs["energy"] = source_energy(p, o.psd);
    m.outputs["max_parseval_rel_error"] = parseval;
    if (!o.csv.empty()) {
      CsvWriter csv(o.csv, {"trial", "quadrature_energy", "coefficient_energy"});
      for (std::size_t i = 0; i < s.quadrature_energy.size(); ++i) {
        csv.row({static_cast<double>(i), s.quadrature_energy[i], s.coefficient_energy[i]});
      }
      m.outputs["csv_path"] = o.csv;
      m.outputs["csv_schema"] = "simulate_source/1";
    }
  } else if (o.kind == "wvs") {
    const int max_mode = o.max_mode.value_or(40);
    m.inputs["max_mode"] = max_mode;
    m.inputs["points"] = o.points;
    std::optional<CsvWriter> csv;
    if (!o.csv.empty()) csv.emplace(o.csv, std::vector<std::string>{"t", "omega", "estimate", "closed_form", "abs_error"});
    double sup_error = 0.0;
    double max_imag = 0.0;
    for (double t : linspace(-p.alpha(), p.alpha(), o.points)) {
      for (double w : linspace(-p.beta(), p.beta(), o.points)) {
        const WvsEstimate est = estimate_wvs(p, o.psd, t, w, max_mode);
        const double exact = wvs(p, o.psd, t, w);
        sup_error = std::max(sup_error, std::abs(est.value - exact));
        max_imag = std::max(max_imag, std::abs(est.imag_residual));
        if (csv) csv->row({t, w, est.value, exact, std::abs(est.value - exact)});
      }
    }
    m.outputs["sup_error"] = sup_error;
    m.outputs["max_imag_residual"] = max_imag;
    if (csv) {
      m.outputs["csv_path"] = o.csv;
      m.outputs["csv_schema"] = "simulate_wvs/1";
    }
  } else {
    throw UsageError("unknown simulation kind '" + o.kind + "'");
  }
  return m;
}

struct GridOptions {
  FilterOptions filter;
  std::string surface = "Phi";
  double scale = 1.0;
  double extent = 3.0;
  double step = 0.05;
  std::string csv;
};

Manifest cmd_grid(const GridOptions& o) {
  const FilterParams p = o.filter.resolve();
  if (!(o.extent > 0.0) || !(o.step > 0.0)) throw UsageError("--extent and --step must be positive");
  Manifest m{"grid"};
  record_params(m.inputs, p);
  m.inputs["surface"] = o.surface;
  m.inputs["scale"] = o.scale;
  m.inputs["extent"] = o.extent;
  m.inputs["step"] = o.step;

  TFFunction::Kind kind;
  if (o.surface == "N") {
    kind = TFFunction::Kind::noise_profile;
  } else if (o.surface == "Phi") {
    kind = TFFunction::Kind::wvs;
  } else if (o.surface == "weyl") {
    kind = TFFunction::Kind::weyl_symbol;
  } else {
    throw UsageError("unknown surface '" + o.surface + "' (expected N, Phi or weyl)");
  }
  const TFFunction f(kind, p, o.scale);
  // extent and step are in scaled units: t / alpha and omega / beta
  const UniformGrid u = UniformGrid::symmetric(o.extent, o.step);
  std::optional<CsvWriter> csv;
  if (!o.csv.empty()) csv.emplace(o.csv, std::vector<std::string>{"t", "omega", "value"});
  double riemann = 0.0;
  for (std::size_t i = 0; i < u.count; ++i) {
    for (std::size_t j = 0; j < u.count; ++j) {
      const double t = u.at(i) * p.alpha();
      const double w = u.at(j) * p.beta();
      const double v = f(t, w);
      riemann += v;
      if (csv) csv->row({t, w, v});
    }
  }
  riemann *= (u.step * p.alpha()) * (u.step * p.beta());
  m.outputs["center_value"] = f.center();
  m.outputs["riemann_integral"] = riemann;
  m.outputs["points"] = u.count * u.count;
  if (kind == TFFunction::Kind::wvs) m.outputs["energy"] = source_energy(p, o.scale);
  if (csv) {
    m.outputs["csv_path"] = o.csv;
    m.outputs["csv_schema"] = "grid_surface/1";
  }
  return m;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Heat-channel capacity and rate-distortion by (reverse) waterfilling", "heatwf"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  bool as_json = false;
  app.add_flag("--json", as_json, "emit a single JSON manifest on stdout");

  auto* params_cmd = app.add_subcommand("params", "derive the filter parameter bundle");
  FilterOptions params_opts;
  params_opts.add_to(params_cmd);
  params_cmd->add_flag("--json", as_json, "emit a single JSON manifest on stdout");

  auto* cap_cmd = app.add_subcommand("capacity", "heat-channel capacity");
  CapacityOptions cap;
  cap.filter.add_to(cap_cmd);
  cap_cmd->add_option("--S", cap.S, "average input energy S >= 0")->required();
  cap_cmd->add_option("--theta2", cap.theta2, "noise PSD theta^2 > 0")->required();
  cap_cmd->add_option("--method", cap.method)->check(CLI::IsMember({"exact", "tf", "both"}))->capture_default_str();
  cap_cmd->add_option("--units", cap.units)->check(CLI::IsMember({"nats", "bits"}))->capture_default_str();
  cap_cmd->add_option("--nu", cap.nu, "evaluate the time-frequency integrals at this nu instead of solving for it");
  cap_cmd->add_flag("--json", as_json, "emit a single JSON manifest on stdout");

  auto* rd_cmd = app.add_subcommand("rd", "rate-distortion function of the KL source");
  RateOptions rd;
  rd.filter.add_to(rd_cmd);
  rd_cmd->add_option("--D", rd.D, "target distortion 0 < D <= E")->required();
  rd_cmd->add_option("--sigma2", rd.sigma2, "source PSD sigma^2 > 0")->capture_default_str();
  rd_cmd->add_option("--method", rd.method)->check(CLI::IsMember({"exact", "tf", "both"}))->capture_default_str();
  rd_cmd->add_option("--units", rd.units)->check(CLI::IsMember({"nats", "bits"}))->capture_default_str();
  rd_cmd->add_option("--lambda", rd.lambda, "evaluate the time-frequency integrals at this lambda");
  rd_cmd->add_flag("--json", as_json, "emit a single JSON manifest on stdout");

  auto* sz_cmd = app.add_subcommand("szego", "eigenvalue sums versus phase-plane integrals");
  SzegoOptions sz;
  sz_cmd->add_option("--g", sz.g, "power_n | log_plus | min_one | power_alloc")->required();
  sz_cmd->add_option("--n", sz.n, "exponent for power_n")->capture_default_str();
  sz_cmd->add_option("--a", sz.a, "coefficient a")->capture_default_str();
  sz_cmd->add_option("--b", sz.b, "argument scale b")->capture_default_str();
  sz_cmd->add_option("--ab-list", sz.ab_list, "comma-separated alpha*beta values")->delimiter(',')->required();
  sz_cmd->add_option("--aspect", sz.aspect, "alpha/beta ratio")->capture_default_str();
  sz_cmd->add_option("--tail-rel", sz.tail_rel, "eigenvalue tail tolerance relative to the trace")->capture_default_str();
  sz_cmd->add_option("--integral", sz.integral)->check(CLI::IsMember({"radial", "2d"}))->capture_default_str();
  sz_cmd->add_option("--csv", sz.csv, "write the sweep as CSV");
  sz_cmd->add_flag("--json", as_json, "emit a single JSON manifest on stdout");

  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo checks of the channel and source models");
  SimulateOptions sim;
  sim.filter.add_to(sim_cmd);
  sim_cmd->add_option("--kind", sim.kind)->check(CLI::IsMember({"noise", "source", "wvs"}))->capture_default_str();
  sim_cmd->add_option("--seed", sim.seed)->capture_default_str();
  sim_cmd->add_option("--trials", sim.trials)->capture_default_str();
  sim_cmd->add_option("--psd", sim.psd, "theta^2 (noise) or sigma^2 (source, wvs)")->capture_default_str();
  sim_cmd->add_option("--max-mode", sim.max_mode, "highest Hermite index (default 5 for noise, 40 otherwise)");
  sim_cmd->add_option("--points", sim.points, "wvs: points per axis of the (t, omega) grid")->capture_default_str();
  sim_cmd->add_option("--csv", sim.csv, "write per-entry results as CSV");
  sim_cmd->add_flag("--json", as_json, "emit a single JSON manifest on stdout");

  auto* grid_cmd = app.add_subcommand("grid", "sample N, Phi or the Weyl symbol on a (t, omega) grid");
  GridOptions grid;
  grid.filter.add_to(grid_cmd);
  grid_cmd->add_option("--surface", grid.surface)->check(CLI::IsMember({"N", "Phi", "weyl"}))->capture_default_str();
  grid_cmd->add_option("--scale", grid.scale, "theta^2 for N, sigma^2 for Phi")->capture_default_str();
  grid_cmd->add_option("--extent", grid.extent, "half-width in units of alpha and beta")->capture_default_str();
  grid_cmd->add_option("--step", grid.step, "spacing in units of alpha and beta")->capture_default_str();
  grid_cmd->add_option("--csv", grid.csv, "write t,omega,value rows");
  grid_cmd->add_flag("--json", as_json, "emit a single JSON manifest on stdout");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }

  try {
    Manifest m;
    if (params_cmd->parsed()) {
      const FilterParams p = params_opts.resolve();
      m.command = "params";
      record_params(m.inputs, p);
      m.outputs = params_json(p);
    } else if (cap_cmd->parsed()) {
      m = cmd_capacity(cap);
    } else if (rd_cmd->parsed()) {
      m = cmd_rd(rd);
    } else if (sz_cmd->parsed()) {
      m = cmd_szego(sz);
    } else if (sim_cmd->parsed()) {
      m = cmd_simulate(sim);
    } else {
      m = cmd_grid(grid);
    }
    emit(m, as_json, out);
    return kExitOk;
  } catch (const AccuracyError& e) {
    err << "accuracy error: " << e.what() << '\n';
    return kExitAccuracy;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace heatwf::cli
