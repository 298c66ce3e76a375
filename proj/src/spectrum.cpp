#include "heatwf/spectrum.hpp"

#include <cmath>

#include "heatwf/errors.hpp"
#include "heatwf/numeric.hpp"

namespace heatwf {

double SpectrumTruncation::listed_sum() const {
  CompensatedSum sum;
  for (double lambda : eigenvalues) sum += lambda;
  return sum.value();
}

double eigenvalue(const FilterParams& params, std::size_t k) {
  return std::exp(-(2.0 * static_cast<double>(k) + 1.0) * params.delta());
}

double eigenvalue_tail(const FilterParams& params, std::size_t first) {
  // rho^(2K+1) / (1 - rho^2), with 1 - rho^2 = -expm1(-2 delta)
  return eigenvalue(params, first) / -std::expm1(-2.0 * params.delta());
}

double power_trace(const FilterParams& params, int n) {
  if (n < 1) throw DomainError("power_trace: n must be >= 1");
  return 0.5 / std::sinh(n * params.delta());
}

SpectrumTruncation spectrum(const FilterParams& params, double tail_eps) {
  if (!(tail_eps > 0.0)) throw DomainError("tail_eps must be positive");
  const double delta = params.delta();
  // tail(K) <= eps  <=>  (2K+1) delta >= -ln(eps (1 - rho^2))
  const double needed = -std::log(tail_eps * -std::expm1(-2.0 * delta));
  std::size_t count = 0;
  if (needed > delta) count = static_cast<std::size_t>(std::ceil((needed / delta - 1.0) / 2.0));
  while (count > 0 && eigenvalue_tail(params, count - 1) <= tail_eps) --count;
  while (eigenvalue_tail(params, count) > tail_eps) ++count;

  std::vector<double> values(count);
  for (std::size_t k = 0; k < count; ++k) values[k] = eigenvalue(params, k);
  return SpectrumTruncation{params, tail_eps, std::move(values), eigenvalue_tail(params, count)};
}

SpectrumTruncation spectrum(const FilterParams& params) { return spectrum(params, 1e-12 * power_trace(params)); }

}  // namespace heatwf
