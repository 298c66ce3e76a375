#include "heatwf/filter.hpp"

#include <algorithm>
#include <boost/math/constants/constants.hpp>
#include <cmath>
#include <string>

#include "heatwf/errors.hpp"

namespace heatwf {

namespace {

constexpr double kTwoPi = boost::math::constants::two_pi<double>();

// Kernel contributions with (beta^2/2)(t/cosh - t')^2 above this are below e^-60.
constexpr double kKernelCutoff = 60.0;

void check_grid(std::span<const double> samples, const UniformGrid& grid) {
  if (samples.size() != grid.count) {
    throw UsageError("sample count " + std::to_string(samples.size()) + " does not match grid size " +
                     std::to_string(grid.count));
  }
}

}  // namespace

std::vector<double> apply_spectral(double delta, std::span<const double> coeffs) {
  std::vector<double> out(coeffs.size());
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    out[k] = std::exp(-(static_cast<double>(k) + 0.5) * delta) * coeffs[k];
  }
  return out;
}

std::vector<double> apply_spectral(const FilterParams& params, std::span<const double> coeffs) {
  return apply_spectral(params.delta(), coeffs);
}

double filter_kernel(const FilterParams& params, double t, double t_prime) {
  const double a = params.alpha();
  const double b = params.beta();
  const double c = params.cosh_delta();
  const double shift = t / c - t_prime;
  return std::exp(-t * t / (2.0 * a * a) - 0.5 * b * b * shift * shift) * b / std::sqrt(kTwoPi * c);
}

UniformGrid default_kernel_grid(const FilterParams& params, int max_order) {
  const double g = params.gamma();
  const double half = std::max(8.0 * params.alpha(), 8.0 * g * std::sqrt(2.0 * max_order + 1.0));
  const double step = std::min(1.0 / (8.0 * params.beta()), g / 8.0);
  return UniformGrid::symmetric(half, step);
}

std::vector<double> apply_kernel(const FilterParams& params, std::span<const double> samples,
                                 const UniformGrid& grid) {
  check_grid(samples, grid);
  const double b = params.beta();
  if (grid.step > 1.0 / (4.0 * b)) {
    throw AccuracyError("grid too coarse for kernel quadrature: spacing " + format_number(grid.step) +
                        " exceeds 1/(4 beta) = " + format_number(1.0 / (4.0 * b)));
  }
  const std::size_t n = grid.count;
  std::vector<double> out(n, 0.0);
  if (n < 2) return out;
  const double window = std::sqrt(2.0 * kKernelCutoff) / b;
  const double c = params.cosh_delta();
  for (std::size_t i = 0; i < n; ++i) {
    const double t = grid.at(i);
    const double centre = t / c;
    const double lo_pos = std::max(0.0, std::ceil((centre - window - grid.start) / grid.step));
    const double hi_pos = std::min(static_cast<double>(n - 1), std::floor((centre + window - grid.start) / grid.step));
    if (hi_pos < lo_pos) continue;
    const auto lo = static_cast<std::size_t>(lo_pos);
    const auto hi = static_cast<std::size_t>(hi_pos);
    CompensatedSum sum;
    for (std::size_t j = lo; j <= hi; ++j) {
      const double w = (j == 0 || j == n - 1) ? 0.5 : 1.0;
      sum += w * filter_kernel(params, t, grid.at(j)) * samples[j];
    }
    out[i] = sum.value() * grid.step;
  }
  return out;
}

std::vector<double> sample_basis(const HermiteBasis& basis, int k, const UniformGrid& grid) {
  std::vector<double> out(grid.count);
  for (std::size_t i = 0; i < grid.count; ++i) out[i] = basis(k, grid.at(i));
  return out;
}

std::vector<double> project(const HermiteBasis& basis, std::span<const double> samples, const UniformGrid& grid) {
  check_grid(samples, grid);
  const std::size_t m = static_cast<std::size_t>(basis.max_order()) + 1;
  std::vector<CompensatedSum> sums(m);
  std::vector<double> row(m);
  for (std::size_t i = 0; i < grid.count; ++i) {
    const double w = (i == 0 || i + 1 == grid.count) ? 0.5 : 1.0;
    basis.values(grid.at(i), row);
    for (std::size_t k = 0; k < m; ++k) sums[k] += w * row[k] * samples[i];
  }
  std::vector<double> out(m);
  for (std::size_t k = 0; k < m; ++k) out[k] = sums[k].value() * grid.step;
  return out;
}

std::vector<double> gram_matrix(const HermiteBasis& basis, const UniformGrid& grid) {
  const std::size_t m = static_cast<std::size_t>(basis.max_order()) + 1;
  std::vector<CompensatedSum> sums(m * m);
  std::vector<double> row(m);
  for (std::size_t i = 0; i < grid.count; ++i) {
    const double w = (i == 0 || i + 1 == grid.count) ? 0.5 : 1.0;
    basis.values(grid.at(i), row);
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t k = j; k < m; ++k) sums[j * m + k] += w * row[j] * row[k];
    }
  }
  std::vector<double> out(m * m);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t k = j; k < m; ++k) {
      out[j * m + k] = out[k * m + j] = sums[j * m + k].value() * grid.step;
    }
  }
  return out;
}

double scaled_radius2(const FilterParams& params, double t, double omega) {
  const double u = t / params.alpha();
  const double v = omega / params.beta();
  return u * u + v * v;
}

double weyl_symbol(const FilterParams& params, double x, double xi) {
  return std::exp(-scaled_radius2(params, x, xi)) / params.cosh_delta();
}

double weyl_symbol_power(const FilterParams& params, int n, double x, double xi) {
  if (n < 1) throw DomainError("operator power must be >= 1");
  const double nd = n * params.delta();
  const double g = params.gamma();
  return std::exp(-std::tanh(nd) * (x * x / (g * g) + g * g * xi * xi)) / std::cosh(nd);
}

TFFunction::TFFunction(Kind kind, const FilterParams& params, double scale)
    : kind_(kind), params_(params), scale_(scale), center_(0.0) {
  switch (kind_) {
    case Kind::weyl_symbol:
      scale_ = 1.0;
      center_ = 1.0 / params_.cosh_delta();
      break;
    case Kind::noise_profile:
      if (!(scale > 0.0)) throw DomainError("noise profile needs theta^2 > 0");
      center_ = scale * params_.cosh_delta() / kTwoPi;
      break;
    case Kind::wvs:
      if (!(scale >= 0.0)) throw DomainError("Wigner-Ville spectrum needs sigma^2 >= 0");
      center_ = scale / (kTwoPi * params_.cosh_delta());
      break;
  }
}

double TFFunction::radial(double r2) const {
  return kind_ == Kind::noise_profile ? center_ * std::exp(r2) : center_ * std::exp(-r2);
}

}  // namespace heatwf
