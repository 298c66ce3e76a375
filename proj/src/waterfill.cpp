#include "heatwf/waterfill.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "heatwf/errors.hpp"
#include "heatwf/numeric.hpp"
#include "heatwf/spectrum.hpp"

namespace heatwf {

namespace {

// Number of k with sigma^2 lambda_k > table.
std::size_t components_above(const FilterParams& params, double sigma2, double table) {
  if (!(table < sigma2 * eigenvalue(params, 0))) return 0;
  const double estimate = (std::log(sigma2 / table) / params.delta() - 1.0) / 2.0;
  auto count = static_cast<std::size_t>(std::max(0.0, std::ceil(estimate)));
  while (count > 0 && !(sigma2 * eigenvalue(params, count - 1) > table)) --count;
  while (sigma2 * eigenvalue(params, count) > table) ++count;
  return count;
}

// sum_k min{table, sigma^2 lambda_k} over all k.
double distortion_at(const FilterParams& params, double sigma2, double table) {
  const std::size_t above = components_above(params, sigma2, table);
  return static_cast<double>(above) * table + sigma2 * eigenvalue_tail(params, above);
}

}  // namespace

double noise_variance(const FilterParams& params, double theta2, std::size_t k) {
  return theta2 / eigenvalue(params, k);
}

WaterfillSolution capacity_waterfill(const FilterParams& params, double S, double theta2) {
  if (!(S >= 0.0) || !std::isfinite(S)) throw DomainError("power budget S must be nonnegative");
  if (!(theta2 > 0.0)) throw DomainError("noise level theta^2 must be positive");
  WaterfillSolution sol;
  if (S == 0.0) {
    sol.level = noise_variance(params, theta2, 0);
    return sol;
  }

  CompensatedSum noise_sum;
  std::size_t active = 0;
  double level = 0.0;
  for (std::size_t K = 1;; ++K) {
    noise_sum += noise_variance(params, theta2, K - 1);
    level = (S + noise_sum.value()) / static_cast<double>(K);
    if (level <= noise_variance(params, theta2, K)) {
      active = K;
      break;
    }
  }

  sol.level = level;
  sol.active_count = active;
  sol.allocations.resize(active);
  CompensatedSum capacity;
  CompensatedSum budget;
  for (std::size_t k = 0; k < active; ++k) {
    const double nu2 = noise_variance(params, theta2, k);
    sol.allocations[k] = level - nu2;
    budget += level - nu2;
    capacity += 0.5 * std::log(level / nu2);
  }
  sol.value = capacity.value();
  sol.budget_check = budget.value();
  return sol;
}

double source_energy(const FilterParams& params, double sigma2) { return sigma2 * power_trace(params, 1); }

WaterfillSolution rd_reverse_waterfill(const FilterParams& params, double D, double sigma2, double tail_eps) {
  if (!(sigma2 > 0.0)) throw DomainError("source variance sigma^2 must be positive");
  if (!(D > 0.0)) throw DomainError("distortion D must be positive");
  const double energy = source_energy(params, sigma2);
  if (D > energy) {
    throw DomainError("distortion exceeds source energy: D = " + format_number(D) + " > E = " + format_number(energy));
  }

  const double top = sigma2 * eigenvalue(params, 0);
  double table = top;
  if (D < energy) {
    double lo = 0.0;
    double hi = top;
    for (int iter = 0; iter < 4000; ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      const double d_mid = distortion_at(params, sigma2, mid);
      table = mid;
      if (std::abs(d_mid - D) <= 1e-12 * D) break;
      (d_mid < D ? lo : hi) = mid;
    }
  }

  WaterfillSolution sol;
  sol.level = table;
  sol.active_count = components_above(params, sigma2, table);
  CompensatedSum rate;
  for (std::size_t k = 0; k < sol.active_count; ++k) {
    rate += 0.5 * std::log(sigma2 * eigenvalue(params, k) / table);
  }
  sol.value = rate.value();

  const SpectrumTruncation spec = spectrum(params, tail_eps);
  sol.allocations.resize(spec.size());
  CompensatedSum budget;
  for (std::size_t k = 0; k < spec.size(); ++k) {
    sol.allocations[k] = std::min(table, sigma2 * spec.eigenvalues[k]);
    budget += sol.allocations[k];
  }
  if (sol.active_count > spec.size()) {
    budget += static_cast<double>(sol.active_count - spec.size()) * table;
    budget += sigma2 * eigenvalue_tail(params, sol.active_count);
  } else {
    budget += sigma2 * spec.tail_bound;
  }
  sol.budget_check = budget.value();
  return sol;
}

double closed_form_S(const FilterParams& params, double sigma2, double theta2) {
  if (!(theta2 > 0.0) || !(sigma2 >= theta2)) throw DomainError("closed_form_S requires sigma^2 >= theta^2 > 0");
  const double x = sigma2 / theta2;
  return 0.5 * params.time_bandwidth() * theta2 * (x * std::log(x) - x + 1.0);
}

double closed_form_D(const FilterParams& params, double sigma2, double theta2) {
  if (!(theta2 > 0.0) || !(sigma2 >= theta2)) throw DomainError("closed_form_D requires 0 < theta^2 <= sigma^2");
  const double x = theta2 / sigma2;
  return 0.5 * params.time_bandwidth() * sigma2 * (x - x * std::log(x));
}

}  // namespace heatwf
