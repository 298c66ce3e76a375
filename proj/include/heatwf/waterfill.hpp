#pragma once

#include <cstddef>
#include <vector>

#include "heatwf/params.hpp"

namespace heatwf {

/// Result of (reverse) waterfilling over the subchannels k = 0, 1, ...
///
/// Capacity: level is the water level sigma^2, allocations are the powers
/// sigma^2 - nu_k^2 of the active subchannels, value is C in nats and
/// budget_check the reconstructed S.
/// Rate: level is the water table theta^2, allocations are the distortions
/// min{theta^2, sigma_k^2} of the listed (truncated) components, value is R
/// in nats and budget_check the reconstructed D including the geometric tail.
struct WaterfillSolution {
  double level = 0.0;
  std::size_t active_count = 0;
  std::vector<double> allocations;
  double value = 0.0;
  double budget_check = 0.0;
};

/// Noise variance nu_k^2 = theta^2 / lambda_k of subchannel k.
double noise_variance(const FilterParams& params, double theta2, std::size_t k);

/// Waterfilling on nu_k^2 = theta^2 / lambda_k with total power S.
///
/// Incremental sweep: for K = 1, 2, ... the candidate level is
/// (S + sum_{k<K} nu_k^2) / K, accepted once nu_{K-1}^2 < level <= nu_K^2.
/// A level equal to nu_K^2 leaves subchannel K inactive. S = 0 gives K = 0.
WaterfillSolution capacity_waterfill(const FilterParams& params, double S, double theta2);

/// Average energy E = sigma^2 sum_k lambda_k of the coefficient source.
double source_energy(const FilterParams& params, double sigma2);

/// Reverse waterfilling on sigma_k^2 = sigma^2 lambda_k with target distortion D.
///
/// Solves sum_k min{theta^2, sigma_k^2} = D for theta^2 by bisection on
/// (0, sigma_0^2] to |dD| <= 1e-12 D. The sum runs over all k: components
/// below the table enter through the closed-form geometric tail. allocations
/// list the components kept by a truncation at tail_eps.
/// Throws DomainError unless 0 < D <= E.
WaterfillSolution rd_reverse_waterfill(const FilterParams& params, double D, double sigma2, double tail_eps = 1e-12);

/// Large-alpha*beta approximation of S at water level sigma^2:
/// (alpha beta / 2) theta^2 (x ln x - x + 1), x = sigma^2 / theta^2. Requires sigma2 > theta2 > 0.
double closed_form_S(const FilterParams& params, double sigma2, double theta2);

/// Large-alpha*beta approximation of D at water table theta^2:
/// (alpha beta / 2) sigma^2 (x - x ln x), x = theta^2 / sigma^2. Requires 0 < theta2 <= sigma2.
double closed_form_D(const FilterParams& params, double sigma2, double theta2);

}  // namespace heatwf
