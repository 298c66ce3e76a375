#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "heatwf/numeric.hpp"
#include "heatwf/params.hpp"

namespace heatwf {

/// Monte Carlo configuration. noise_psd is the two-sided PSD theta^2 for the
/// channel simulations and the source variance sigma^2 for the KL source.
///
/// Randomness: trial i draws from its own std::mt19937_64 seeded with
/// seed_seq{seed_lo, seed_hi, i_lo, i_hi}; within a trial the draws are
/// consumed in grid order (noise) or mode order (source). Results are thus a
/// function of (seed, trial) only, independent of evaluation order.
struct SimConfig {
  FilterParams params;
  double noise_psd = 1.0;
  std::size_t n_trials = 1000;
  std::uint64_t seed = 0;
  UniformGrid grid;
  int max_mode = 5;

  /// Grid spacing gamma/8 covering +-(4 sqrt(2 max_mode + 1) + 6) gamma.
  static SimConfig with_default_grid(const FilterParams& params, double noise_psd, std::size_t n_trials,
                                     std::uint64_t seed, int max_mode);

  /// Throws UsageError unless spacing <= gamma/8 and the grid covers
  /// +-4 gamma sqrt(2 max_mode + 1) (a span of at least 8 gamma sqrt(2 max_mode + 1)).
  void validate() const;
};

/// Sample moments of per-mode statistics over the trials (row-major square matrices).
struct EmpiricalMoments {
  std::size_t modes = 0;
  std::size_t n_trials = 0;
  std::vector<double> mean;
  std::vector<double> covariance;
  std::vector<double> mean_stderr;
  /// Standard error of each covariance entry under Gaussianity:
  /// sqrt((C_jj C_kk + C_jk^2) / n).
  std::vector<double> covariance_stderr;

  double cov(std::size_t j, std::size_t k) const { return covariance[j * modes + k]; }
  double cov_stderr(std::size_t j, std::size_t k) const { return covariance_stderr[j * modes + k]; }
};

/// Grid white noise (iid, variance theta^2 / spacing) projected on D_gamma H_k,
/// k = 0..max_mode. Expected: covariance theta^2 I.
EmpiricalMoments simulate_matched_filter_noise(const SimConfig& cfg);

/// The same draws mapped through z_k = rho^(-k-1/2) n_k. Expected: Var(Z_k) = theta^2 / lambda_k.
EmpiricalMoments simulate_effective_noise(const SimConfig& cfg);

/// Least-squares fit of ln Var(Z_k) = intercept + slope k.
struct VarianceLawFit {
  double slope = 0.0;
  double slope_stderr = 0.0;
  double intercept = 0.0;
  double expected_slope = 0.0;  // -2 ln rho = 2 delta
};
VarianceLawFit fit_variance_law(const EmpiricalMoments& effective, const FilterParams& params);

struct KLSourceSample {
  std::vector<std::vector<double>> realizations;  // first `keep` trials, sampled on cfg.grid
  std::vector<double> quadrature_energy;          // int X(t)^2 dt per trial (trapezoid)
  std::vector<double> coefficient_energy;         // sum_k X_k^2 per trial
  double empirical_energy = 0.0;                  // mean of quadrature_energy
  double energy_stderr = 0.0;
  double expected_energy = 0.0;                   // sigma^2 sum_{k <= max_mode} lambda_k
};

/// X(t) = sum_{k <= max_mode} X_k (D_gamma H_k)(t) with X_k ~ N(0, sigma^2 lambda_k).
KLSourceSample simulate_kl_source(const SimConfig& cfg, std::size_t keep_realizations = 0);

/// r(t1, t2) = sigma^2 sum_{k <= max_mode} lambda_k (D_gamma H_k)(t1) (D_gamma H_k)(t2).
/// Throws UsageError if the dropped eigenvalue tail exceeds 1e-12 lambda_0.
double autocorrelation(const FilterParams& params, double sigma2, double t1, double t2, int max_mode);

/// sigma^2 times the integral kernel of P_{2 delta} (same gamma).
double autocorrelation_kernel(const FilterParams& params, double sigma2, double t1, double t2);

struct LagGrid {
  double half_width = 0.0;
  double step = 0.0;
};

struct WvsEstimate {
  double value = 0.0;
  double imag_residual = 0.0;
};

/// Default lag grid for estimate_wvs at (t, omega).
LagGrid default_lag_grid(const FilterParams& params, double t, double omega, int max_mode);

/// (1/2pi) int exp(-i omega tau) r(t + tau/2, t - tau/2) dtau by the trapezoid
/// rule on a lag grid. Throws AccuracyError when the lag-slice has not decayed
/// to 1e-12 of its peak at the grid ends.
WvsEstimate estimate_wvs(const FilterParams& params, double sigma2, double t, double omega, int max_mode,
                         std::optional<LagGrid> lags = std::nullopt);

}  // namespace heatwf
