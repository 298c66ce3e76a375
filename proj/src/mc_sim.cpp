#include "heatwf/mc_sim.hpp"

#include <algorithm>
#include <boost/math/constants/constants.hpp>
#include <cmath>
#include <random>
#include <string>

#include "heatwf/errors.hpp"
#include "heatwf/filter.hpp"
#include "heatwf/hermite.hpp"
#include "heatwf/spectrum.hpp"
#include "heatwf/waterfill.hpp"

namespace heatwf {

namespace {

constexpr double kTwoPi = boost::math::constants::two_pi<double>();

std::mt19937_64 trial_engine(std::uint64_t seed, std::size_t trial) {
  const auto t = static_cast<std::uint64_t>(trial);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(t >> 32)};
  return std::mt19937_64(seq);
}

double trapezoid_weight(std::size_t i, std::size_t n) { return (i == 0 || i + 1 == n) ? 0.5 : 1.0; }

// Basis samples, row k holds (D_gamma H_k)(t_i) for all grid points.
std::vector<double> basis_table(const FilterParams& params, const UniformGrid& grid, int max_mode) {
  const HermiteBasis basis(params.gamma(), max_mode);
  const std::size_t m = static_cast<std::size_t>(max_mode) + 1;
  std::vector<double> table(m * grid.count);
  std::vector<double> col(m);
  for (std::size_t i = 0; i < grid.count; ++i) {
    basis.values(grid.at(i), col);
    for (std::size_t k = 0; k < m; ++k) table[k * grid.count + i] = col[k];
  }
  return table;
}

// Two-pass sample moments of rows of `samples` (n_trials x modes).
EmpiricalMoments moments(const std::vector<double>& samples, std::size_t n_trials, std::size_t modes) {
  EmpiricalMoments out;
  out.modes = modes;
  out.n_trials = n_trials;
  out.mean.assign(modes, 0.0);
  out.covariance.assign(modes * modes, 0.0);
  out.mean_stderr.assign(modes, 0.0);
  out.covariance_stderr.assign(modes * modes, 0.0);
  if (n_trials < 2) return out;

  for (std::size_t k = 0; k < modes; ++k) {
    CompensatedSum s;
    for (std::size_t i = 0; i < n_trials; ++i) s += samples[i * modes + k];
    out.mean[k] = s.value() / static_cast<double>(n_trials);
  }
  for (std::size_t j = 0; j < modes; ++j) {
    for (std::size_t k = j; k < modes; ++k) {
      CompensatedSum s;
      for (std::size_t i = 0; i < n_trials; ++i) {
        s += (samples[i * modes + j] - out.mean[j]) * (samples[i * modes + k] - out.mean[k]);
      }
      out.covariance[j * modes + k] = out.covariance[k * modes + j] = s.value() / static_cast<double>(n_trials - 1);
    }
  }
  const double n = static_cast<double>(n_trials);
  for (std::size_t j = 0; j < modes; ++j) {
    out.mean_stderr[j] = std::sqrt(out.cov(j, j) / n);
    for (std::size_t k = 0; k < modes; ++k) {
      const double c = out.cov(j, k);
      out.covariance_stderr[j * modes + k] = std::sqrt((out.cov(j, j) * out.cov(k, k) + c * c) / n);
    }
  }
  return out;
}

// Multiplies statistic k by factor[k] (mean, covariance and their standard errors).
// Scales mode j by sqrt(variance[j]); the diagonal is multiplied by variance[j] itself.
void rescale(EmpiricalMoments& m, const std::vector<double>& variance) {
  for (std::size_t j = 0; j < m.modes; ++j) {
    const double amp = std::sqrt(variance[j]);
    m.mean[j] *= amp;
    m.mean_stderr[j] *= amp;
    for (std::size_t k = 0; k < m.modes; ++k) {
      const double f = j == k ? variance[j] : amp * std::sqrt(variance[k]);
      m.covariance[j * m.modes + k] *= f;
      m.covariance_stderr[j * m.modes + k] *= f;
    }
  }
}

// Unit-PSD matched-filter statistics; scaling by theta^2 is applied afterwards
// so that the pipeline is exactly linear in theta^2.
EmpiricalMoments unit_matched_filter_moments(const SimConfig& cfg) {
  cfg.validate();
  const std::size_t m = static_cast<std::size_t>(cfg.max_mode) + 1;
  const std::size_t n = cfg.grid.count;
  const std::vector<double> table = basis_table(cfg.params, cfg.grid, cfg.max_mode);
  const double root_step = std::sqrt(cfg.grid.step);

  std::vector<double> samples(cfg.n_trials * m);
  std::vector<double> noise(n);
  for (std::size_t trial = 0; trial < cfg.n_trials; ++trial) {
    auto engine = trial_engine(cfg.seed, trial);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) noise[i] = trapezoid_weight(i, n) * normal(engine);
    for (std::size_t k = 0; k < m; ++k) {
      const double* row = &table[k * n];
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) acc += noise[i] * row[i];
      samples[trial * m + k] = root_step * acc;
    }
  }
  return moments(samples, cfg.n_trials, m);
}

}  // namespace

SimConfig SimConfig::with_default_grid(const FilterParams& params, double noise_psd, std::size_t n_trials,
                                       std::uint64_t seed, int max_mode) {
  const double g = params.gamma();
  const double half = g * (4.0 * std::sqrt(2.0 * max_mode + 1.0) + 6.0);
  return SimConfig{params, noise_psd, n_trials, seed, UniformGrid::symmetric(half, g / 8.0), max_mode};
}

void SimConfig::validate() const {
  if (max_mode < 0) throw UsageError("max_mode must be nonnegative");
  if (!(noise_psd >= 0.0) || !std::isfinite(noise_psd)) throw UsageError("noise PSD must be finite and nonnegative");
  const double g = params.gamma();
  if (!(grid.step > 0.0) || grid.step > g / 8.0 * (1.0 + 1e-12)) {
    throw UsageError("simulation grid spacing " + format_number(grid.step) + " exceeds gamma/8 = " +
                     format_number(g / 8.0));
  }
  const double reach = 4.0 * g * std::sqrt(2.0 * max_mode + 1.0);
  if (grid.start > -reach || grid.stop() < reach) {
    throw UsageError("simulation grid must cover +-" + format_number(reach) + " to resolve mode " +
                     std::to_string(max_mode));
  }
}

EmpiricalMoments simulate_matched_filter_noise(const SimConfig& cfg) {
  EmpiricalMoments out = unit_matched_filter_moments(cfg);
  rescale(out, std::vector<double>(out.modes, cfg.noise_psd));
  return out;
}

EmpiricalMoments simulate_effective_noise(const SimConfig& cfg) {
  EmpiricalMoments out = unit_matched_filter_moments(cfg);
  std::vector<double> variance(out.modes);
  for (std::size_t k = 0; k < out.modes; ++k) variance[k] = noise_variance(cfg.params, cfg.noise_psd, k);
  rescale(out, variance);
  return out;
}

VarianceLawFit fit_variance_law(const EmpiricalMoments& effective, const FilterParams& params) {
  if (effective.modes < 2) throw UsageError("variance law fit needs at least two modes");
  const auto m = static_cast<double>(effective.modes);
  const double k_mean = (m - 1.0) / 2.0;
  double y_mean = 0.0;
  for (std::size_t k = 0; k < effective.modes; ++k) y_mean += std::log(effective.cov(k, k));
  y_mean /= m;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t k = 0; k < effective.modes; ++k) {
    const double dx = static_cast<double>(k) - k_mean;
    sxx += dx * dx;
    sxy += dx * (std::log(effective.cov(k, k)) - y_mean);
  }
  VarianceLawFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = y_mean - fit.slope * k_mean;
  // Var(ln of a sample variance) ~ 2 / n under Gaussianity
  fit.slope_stderr = std::sqrt(2.0 / static_cast<double>(effective.n_trials) / sxx);
  fit.expected_slope = 2.0 * params.delta();
  return fit;
}

KLSourceSample simulate_kl_source(const SimConfig& cfg, std::size_t keep_realizations) {
  cfg.validate();
  const std::size_t m = static_cast<std::size_t>(cfg.max_mode) + 1;
  const std::size_t n = cfg.grid.count;
  const std::vector<double> table = basis_table(cfg.params, cfg.grid, cfg.max_mode);
  std::vector<double> stddev(m);
  CompensatedSum expected;
  for (std::size_t k = 0; k < m; ++k) {
    const double var = cfg.noise_psd * eigenvalue(cfg.params, k);
    stddev[k] = std::sqrt(var);
    expected += var;
  }

  KLSourceSample out;
  out.expected_energy = expected.value();
  out.quadrature_energy.resize(cfg.n_trials);
  out.coefficient_energy.resize(cfg.n_trials);
  const std::size_t keep = std::min(keep_realizations, cfg.n_trials);
  out.realizations.reserve(keep);

  std::vector<double> coeffs(m);
  std::vector<double> path(n);
  for (std::size_t trial = 0; trial < cfg.n_trials; ++trial) {
    auto engine = trial_engine(cfg.seed, trial);
    std::normal_distribution<double> normal(0.0, 1.0);
    CompensatedSum coeff_energy;
    for (std::size_t k = 0; k < m; ++k) {
      coeffs[k] = stddev[k] * normal(engine);
      coeff_energy += coeffs[k] * coeffs[k];
    }
    std::fill(path.begin(), path.end(), 0.0);
    for (std::size_t k = 0; k < m; ++k) {
      const double* row = &table[k * n];
      for (std::size_t i = 0; i < n; ++i) path[i] += coeffs[k] * row[i];
    }
    std::vector<double> squared(n);
    for (std::size_t i = 0; i < n; ++i) squared[i] = path[i] * path[i];
    out.quadrature_energy[trial] = trapezoid(squared, cfg.grid.step);
    out.coefficient_energy[trial] = coeff_energy.value();
    if (trial < keep) out.realizations.push_back(path);
  }

  CompensatedSum total;
  for (double e : out.quadrature_energy) total += e;
  out.empirical_energy = cfg.n_trials > 0 ? total.value() / static_cast<double>(cfg.n_trials) : 0.0;
  if (cfg.n_trials > 1) {
    CompensatedSum dev;
    for (double e : out.quadrature_energy) dev += (e - out.empirical_energy) * (e - out.empirical_energy);
    const double var = dev.value() / static_cast<double>(cfg.n_trials - 1);
    out.energy_stderr = std::sqrt(var / static_cast<double>(cfg.n_trials));
  }
  return out;
}

double autocorrelation(const FilterParams& params, double sigma2, double t1, double t2, int max_mode) {
  if (max_mode < 0) throw UsageError("max_mode must be nonnegative");
  const double dropped = eigenvalue_tail(params, static_cast<std::size_t>(max_mode) + 1);
  if (dropped > 1e-12 * eigenvalue(params, 0)) {
    throw UsageError("max_mode " + std::to_string(max_mode) + " leaves an eigenvalue tail of " +
                     format_number(dropped) + ", above 1e-12 lambda_0");
  }
  const HermiteBasis basis(params.gamma(), max_mode);
  const std::vector<double> a = basis.values(t1);
  const std::vector<double> b = basis.values(t2);
  CompensatedSum sum;
  for (std::size_t k = 0; k < a.size(); ++k) sum += eigenvalue(params, k) * a[k] * b[k];
  return sigma2 * sum.value();
}

double autocorrelation_kernel(const FilterParams& params, double sigma2, double t1, double t2) {
  return sigma2 * filter_kernel(params_from_gamma_delta(params.gamma(), 2.0 * params.delta()), t1, t2);
}

LagGrid default_lag_grid(const FilterParams& params, double t, double omega, int max_mode) {
  const double g = params.gamma();
  const double reach = std::sqrt(2.0 * max_mode + 1.0);
  // Both t +- tau/2 must leave the oscillatory region of the highest mode.
  const double half = 2.0 * (std::abs(t) + g * (reach + 12.0));
  // Resolve the fastest basis oscillation (frequency reach / (2 gamma) in tau) and the carrier omega.
  const double step = 0.5 * boost::math::constants::pi<double>() / (reach / g + std::abs(omega) + 1.0);
  return LagGrid{half, step};
}

WvsEstimate estimate_wvs(const FilterParams& params, double sigma2, double t, double omega, int max_mode,
                         std::optional<LagGrid> lags) {
  const LagGrid lag = lags.value_or(default_lag_grid(params, t, omega, max_mode));
  if (!(lag.half_width > 0.0) || !(lag.step > 0.0)) throw UsageError("lag grid needs positive half-width and step");
  const UniformGrid grid = UniformGrid::symmetric(lag.half_width, lag.step);
  std::vector<double> slice(grid.count);
  double peak = 0.0;
  for (std::size_t i = 0; i < grid.count; ++i) {
    const double tau = grid.at(i);
    slice[i] = autocorrelation(params, sigma2, t + 0.5 * tau, t - 0.5 * tau, max_mode);
    peak = std::max(peak, std::abs(slice[i]));
  }
  const double edge = std::max(std::abs(slice.front()), std::abs(slice.back()));
  if (peak > 0.0 && edge > 1e-12 * peak) {
    throw AccuracyError("lag grid half-width " + format_number(lag.half_width) +
                        " too short: autocorrelation slice has not decayed at the ends");
  }
  std::vector<double> re(grid.count);
  std::vector<double> im(grid.count);
  for (std::size_t i = 0; i < grid.count; ++i) {
    const double phase = omega * grid.at(i);
    re[i] = std::cos(phase) * slice[i];
    im[i] = -std::sin(phase) * slice[i];
  }
  return WvsEstimate{trapezoid(re, grid.step) / kTwoPi, trapezoid(im, grid.step) / kTwoPi};
}

}  // namespace heatwf
