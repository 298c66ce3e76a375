#pragma once

#include <cstddef>
#include <vector>

#include "heatwf/params.hpp"

namespace heatwf {

/// Truncated eigenvalue sequence lambda_k = rho^(2k+1) of A = P_{2 delta}.
///
/// The list stops at the smallest length K for which the exact geometric tail
/// sum_{k >= K} lambda_k = rho^(2K+1) / (1 - rho^2) is at most tail_eps.
struct SpectrumTruncation {
  FilterParams params;
  double tail_eps;
  std::vector<double> eigenvalues;
  double tail_bound;

  std::size_t size() const noexcept { return eigenvalues.size(); }
  /// Compensated sum of the listed eigenvalues.
  double listed_sum() const;
};

/// lambda_k = rho^(2k+1), computed as exp(-(2k+1) delta).
double eigenvalue(const FilterParams& params, std::size_t k);

/// sum_{k >= first} lambda_k in closed form.
double eigenvalue_tail(const FilterParams& params, std::size_t first);

/// sum_k lambda_k^n = 1 / (2 sinh(n delta)); n = 1 gives the trace alpha*beta / (2 cosh delta).
double power_trace(const FilterParams& params, int n = 1);

SpectrumTruncation spectrum(const FilterParams& params, double tail_eps);

/// Default truncation: tail at most 1e-12 of the full trace.
SpectrumTruncation spectrum(const FilterParams& params);

}  // namespace heatwf
