#pragma once

#include <span>
#include <vector>

#include "heatwf/hermite.hpp"
#include "heatwf/numeric.hpp"
#include "heatwf/params.hpp"

namespace heatwf {

/// Output coefficients b_k = rho^(k+1/2) a_k of the filter in the Hermite basis.
std::vector<double> apply_spectral(const FilterParams& params, std::span<const double> coeffs);

/// Same with an explicit semigroup parameter: b_k = exp(-(k+1/2) delta) a_k.
std::vector<double> apply_spectral(double delta, std::span<const double> coeffs);

/// Integral kernel of the filter:
///   k(t, t') = exp(-t^2 / (2 alpha^2)) * beta / sqrt(2 pi cosh delta)
///              * exp(-(beta^2 / 2) (t / cosh delta - t')^2).
double filter_kernel(const FilterParams& params, double t, double t_prime);

/// Default grid for kernel-form application that resolves basis functions up to max_order:
/// half-width max(8 alpha, 8 gamma sqrt(2 max_order + 1)), spacing min(1/(8 beta), gamma/8).
UniformGrid default_kernel_grid(const FilterParams& params, int max_order);

/// Kernel-form application by the trapezoid rule on a uniform grid; the
/// output is sampled on the same grid. Throws AccuracyError if the spacing
/// exceeds 1/(4 beta), UsageError if the sample count does not match the grid.
std::vector<double> apply_kernel(const FilterParams& params, std::span<const double> samples, const UniformGrid& grid);

/// Samples (D_gamma H_k)(t) on a grid.
std::vector<double> sample_basis(const HermiteBasis& basis, int k, const UniformGrid& grid);

/// Hermite coefficients <f, D_gamma H_k>, k = 0..max_order, by the trapezoid rule.
std::vector<double> project(const HermiteBasis& basis, std::span<const double> samples, const UniformGrid& grid);

/// Gram matrix G_jk = <D_gamma H_j, D_gamma H_k> by the trapezoid rule, row-major.
std::vector<double> gram_matrix(const HermiteBasis& basis, const UniformGrid& grid);

/// Weyl symbol of A = P_{2 delta}: exp(-x^2/alpha^2 - xi^2/beta^2) / cosh(delta).
double weyl_symbol(const FilterParams& params, double x, double xi);

/// Weyl symbol of A^n = P_{2 n delta}:
///   exp(-tanh(n delta) (x^2/gamma^2 + gamma^2 xi^2)) / cosh(n delta).
double weyl_symbol_power(const FilterParams& params, int n, double x, double xi);

/// Scaled radius r^2 = t^2/alpha^2 + omega^2/beta^2.
double scaled_radius2(const FilterParams& params, double t, double omega);

/// A radially symmetric time-frequency density: its value depends on (t, omega)
/// only through r^2 = t^2/alpha^2 + omega^2/beta^2.
class TFFunction {
 public:
  enum class Kind { weyl_symbol, noise_profile, wvs };

  /// scale is theta^2 for noise_profile, sigma^2 for wvs and ignored for weyl_symbol.
  TFFunction(Kind kind, const FilterParams& params, double scale = 1.0);

  Kind kind() const noexcept { return kind_; }
  const FilterParams& params() const noexcept { return params_; }
  double scale() const noexcept { return scale_; }

  double operator()(double t, double omega) const { return radial(scaled_radius2(params_, t, omega)); }
  double radial(double r2) const;
  /// Value at the origin.
  double center() const noexcept { return center_; }

 private:
  Kind kind_;
  FilterParams params_;
  double scale_;
  double center_;
};

}  // namespace heatwf
