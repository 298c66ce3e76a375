#include "heatwf/szego.hpp"

#include <algorithm>
#include <array>
#include <boost/math/constants/constants.hpp>
#include <cmath>
#include <future>

#include "heatwf/errors.hpp"
#include "heatwf/filter.hpp"
#include "heatwf/numeric.hpp"
#include "heatwf/spectrum.hpp"

namespace heatwf {

namespace {

constexpr double kTwoPi = boost::math::constants::two_pi<double>();
// Decaying integrands (power_n, min_one) are cut this far beyond their kink: relative loss e^-60.
constexpr double kDecayMargin = 60.0;

// Upper end and kink of the radial variable s = r^2 for G(e^-s / cosh delta).
struct RadialSupport {
  double upper = 0.0;
  std::optional<double> kink;
};

RadialSupport radial_support(const TestFunctionSpec& spec, const FilterParams& params) {
  const double peak = spec.b / params.cosh_delta();
  RadialSupport out;
  if (spec.kind == TestFunctionSpec::Kind::power_n) {
    out.upper = kDecayMargin;
    return out;
  }
  const double s_kink = peak > 1.0 ? std::log(peak) : 0.0;
  if (s_kink > 0.0) out.kink = s_kink;
  out.upper = spec.kind == TestFunctionSpec::Kind::min_one ? s_kink + kDecayMargin : s_kink;
  return out;
}

}  // namespace

double TestFunctionSpec::g(double x) const {
  switch (kind) {
    case Kind::power_n:
      return std::pow(x, n);
    case Kind::log_plus:
      return x > 1.0 ? 0.5 * std::log(x) : 0.0;
    case Kind::min_one:
      return std::min(1.0, x);
    case Kind::power_alloc:
      return x > 1.0 ? 1.0 - 1.0 / x : 0.0;
  }
  return 0.0;
}

double TestFunctionSpec::slope_bound() const {
  switch (kind) {
    case Kind::power_n:
      return 1.0;  // on the tail, where b lambda_k <= 1
    case Kind::log_plus:
      return 0.5 / boost::math::constants::e<double>();
    case Kind::min_one:
      return 1.0;
    case Kind::power_alloc:
      return 0.25;
  }
  return 1.0;
}

void TestFunctionSpec::validate() const {
  if (kind == Kind::power_n && n < 1) throw DomainError("power_n test function needs n >= 1");
  if (!std::isfinite(a)) throw DomainError("coefficient a must be finite");
  if (!(b >= 0.0) || !std::isfinite(b)) throw DomainError("argument scale b must be finite and nonnegative");
  if (domain_bound && !(*domain_bound > 0.0)) throw DomainError("domain bound must be positive");
}

TestFunctionSpec::Kind parse_test_function(const std::string& name) {
  if (name == "power_n" || name == "power") return TestFunctionSpec::Kind::power_n;
  if (name == "log_plus") return TestFunctionSpec::Kind::log_plus;
  if (name == "min_one") return TestFunctionSpec::Kind::min_one;
  if (name == "power_alloc") return TestFunctionSpec::Kind::power_alloc;
  throw UsageError("unknown test function '" + name + "' (expected power_n, log_plus, min_one or power_alloc)");
}

std::string to_string(TestFunctionSpec::Kind kind) {
  switch (kind) {
    case TestFunctionSpec::Kind::power_n:
      return "power_n";
    case TestFunctionSpec::Kind::log_plus:
      return "log_plus";
    case TestFunctionSpec::Kind::min_one:
      return "min_one";
    case TestFunctionSpec::Kind::power_alloc:
      return "power_alloc";
  }
  return "unknown";
}

double szego_integral_radial(const TestFunctionSpec& spec, const FilterParams& params) {
  const RadialSupport support = radial_support(spec, params);
  if (!(support.upper > 0.0)) return 0.0;
  const double m = 1.0 / params.cosh_delta();
  std::vector<double> breaks;
  if (support.kink) breaks.push_back(*support.kink);
  const auto f = [&](double s) { return spec(m * std::exp(-s)); };
  return 0.5 * params.time_bandwidth() * quad::integrate(f, 0.0, support.upper, breaks, 1e-13).value;
}

double szego_integral_2d(const TestFunctionSpec& spec, const FilterParams& params) {
  const RadialSupport support = radial_support(spec, params);
  if (!(support.upper > 0.0)) return 0.0;
  std::vector<double> kinks;
  if (support.kink) kinks.push_back(*support.kink);
  const auto f = [&](double x, double xi) { return spec(weyl_symbol(params, x, xi)) / kTwoPi; };
  return quad::integrate_ellipse(f, params.alpha(), params.beta(), support.upper, kinks, 1e-12).value;
}

SzegoReport szego_gap(const TestFunctionSpec& spec, const FilterParams& params, double tail_eps,
                      SzegoIntegral method) {
  spec.validate();
  const double lambda0 = eigenvalue(params, 0);
  const double bound = spec.domain_bound.value_or(1.05 * spec.b * lambda0);
  if (spec.b * lambda0 > bound) {
    throw DomainError("test function argument b * lambda_0 = " + format_number(spec.b * lambda0) +
                      " exceeds the domain bound " + format_number(bound));
  }

  const SpectrumTruncation spec_trunc = spectrum(params, tail_eps);
  CompensatedSum sum;
  std::size_t k = 0;
  for (; k < spec_trunc.size(); ++k) sum += spec(spec_trunc.eigenvalues[k]);

  if (spec.kind == TestFunctionSpec::Kind::power_n) {
    const double nd = spec.n * params.delta();
    const double tail = std::exp(-(2.0 * k + 1.0) * nd) / -std::expm1(-2.0 * nd);
    sum += spec.a * std::pow(spec.b, spec.n) * tail;
  } else {
    // past b lambda_k <= 1, g is zero (log_plus, power_alloc) or the identity (min_one)
    for (; spec.b * eigenvalue(params, k) > 1.0; ++k) sum += spec(eigenvalue(params, k));
    if (spec.kind == TestFunctionSpec::Kind::min_one) sum += spec.a * spec.b * eigenvalue_tail(params, k);
  }

  SzegoReport report;
  report.ab = params.time_bandwidth();
  report.sum_value = sum.value();
  report.integral_value =
      method == SzegoIntegral::radial ? szego_integral_radial(spec, params) : szego_integral_2d(spec, params);
  report.gap = report.sum_value - report.integral_value;
  report.normalized_gap = report.gap / report.ab;
  report.tail_error = std::abs(spec.a) * spec.slope_bound() * spec.b * spec_trunc.tail_bound;
  return report;
}

std::vector<SzegoReport> szego_sweep(const TestFunctionSpec& spec, std::span<const double> ab_values, double aspect,
                                     double tail_rel, SzegoIntegral method) {
  for (double ab : ab_values) {
    if (!(ab > 1.0)) throw DomainError("every alpha*beta in a sweep must exceed 1");
  }
  std::vector<std::future<SzegoReport>> jobs;
  jobs.reserve(ab_values.size());
  for (double ab : ab_values) {
    jobs.push_back(std::async(std::launch::async, [=, &spec] {
      const FilterParams params = params_from_product(ab, aspect);
      return szego_gap(spec, params, tail_rel * power_trace(params), method);
    }));
  }
  std::vector<SzegoReport> out;
  out.reserve(jobs.size());
  for (auto& job : jobs) out.push_back(job.get());
  return out;
}

std::vector<double> geometric_points(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0) || !(hi >= lo)) throw DomainError("geometric_points needs 0 < lo <= hi");
  if (n == 1) return {lo};
  std::vector<double> out(n);
  const double ratio = std::log(hi / lo);
  for (std::size_t i = 0; i < n; ++i) out[i] = lo * std::exp(ratio * static_cast<double>(i) / (n - 1));
  out.back() = hi;
  return out;
}

}  // namespace heatwf
