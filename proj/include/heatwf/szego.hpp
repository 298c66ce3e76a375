#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "heatwf/params.hpp"

namespace heatwf {

/// G(z) = a * g(b * z) for one of the test functions g of the trace asymptotics.
struct TestFunctionSpec {
  enum class Kind {
    power_n,     // g(x) = x^n, n >= 1
    log_plus,    // g(x) = 0.5 ln+(x)
    min_one,     // g(x) = min{1, x}
    power_alloc  // g(x) = (1 - 1/x)^+, g(0) = 0
  };

  Kind kind = Kind::power_n;
  int n = 1;
  double a = 1.0;
  double b = 1.0;
  /// Upper end Delta of the domain of g. Unset means 1.05 * b * lambda_0.
  std::optional<double> domain_bound;

  double g(double x) const;
  double operator()(double z) const { return a * g(b * z); }
  /// sup_{x > 0} |g(x)| / x, used to bound the dropped part of the eigenvalue sum.
  double slope_bound() const;

  void validate() const;
};

TestFunctionSpec::Kind parse_test_function(const std::string& name);
std::string to_string(TestFunctionSpec::Kind kind);

/// Eigenvalue sum versus phase-plane integral for one test function at one alpha*beta.
struct SzegoReport {
  double ab = 0.0;
  double sum_value = 0.0;       // sum_k G(lambda_k), tail included
  double integral_value = 0.0;  // (1/2pi) iint G(sigma_A(x, xi)) dx dxi
  double gap = 0.0;             // sum_value - integral_value
  double normalized_gap = 0.0;  // gap / ab
  double tail_error = 0.0;      // bound on the contribution of the eigenvalues beyond the listed ones
};

enum class SzegoIntegral { radial, quadrature_2d };

/// Sum over the truncated spectrum plus the tail (closed form for power_n; for
/// the other kinds the listed range is extended until b lambda_k <= 1, where
/// g is linear or zero, and the remainder is summed exactly). tail_error reports
/// |a| * slope_bound * b * (geometric tail at tail_eps). The integral uses the
/// radial reduction (alpha beta / 2) int_0^inf G(e^-s / cosh delta) ds or the
/// nested 2D quadrature. Throws DomainError if b lambda_0 exceeds the domain bound.
SzegoReport szego_gap(const TestFunctionSpec& spec, const FilterParams& params, double tail_eps,
                      SzegoIntegral method = SzegoIntegral::radial);

/// Radial reduction of the phase-plane integral, by 1D adaptive quadrature.
double szego_integral_radial(const TestFunctionSpec& spec, const FilterParams& params);

/// Phase-plane integral by nested 2D quadrature in (x, xi).
double szego_integral_2d(const TestFunctionSpec& spec, const FilterParams& params);

/// One report per alpha*beta, each with alpha / beta = aspect. The tail
/// tolerance is tail_rel times the trace at that alpha*beta. Points are
/// evaluated concurrently; output order matches the input.
std::vector<SzegoReport> szego_sweep(const TestFunctionSpec& spec, std::span<const double> ab_values,
                                     double aspect = 1.0, double tail_rel = 1e-12,
                                     SzegoIntegral method = SzegoIntegral::radial);

/// n points geometrically spaced from lo to hi inclusive.
std::vector<double> geometric_points(double lo, double hi, std::size_t n);

}  // namespace heatwf
