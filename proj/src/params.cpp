#include "heatwf/params.hpp"

#include <cmath>
#include <string>

#include "heatwf/errors.hpp"

namespace heatwf {

FilterParams::FilterParams(double alpha, double beta, double gamma, double delta, double rho)
    : alpha_(alpha), beta_(beta), gamma_(gamma), delta_(delta), rho_(rho), cosh_delta_(std::cosh(delta)) {}

double arccoth(double x) {
  if (!(x > 1.0)) throw DomainError("arccoth: argument must exceed 1, got " + format_number(x));
  return 0.5 * std::log1p(2.0 / (x - 1.0));
}

FilterParams derive_params(double alpha, double beta) {
  if (!(alpha > 0.0) || !(beta > 0.0) || !std::isfinite(alpha) || !std::isfinite(beta)) {
    throw DomainError("alpha and beta must be positive and finite");
  }
  const double ab = alpha * beta;
  if (!(ab > 1.0)) {
    throw DomainError("uncertainty bound violated: alpha*beta = " + format_number(ab) + " must exceed 1");
  }
  const double delta = arccoth(ab);
  return FilterParams(alpha, beta, std::sqrt(alpha / beta), delta, std::exp(-delta));
}

FilterParams params_from_product(double product, double aspect) {
  if (!(product > 0.0) || !(aspect > 0.0)) throw DomainError("product and aspect must be positive");
  return derive_params(std::sqrt(product * aspect), std::sqrt(product / aspect));
}

FilterParams params_from_gamma_delta(double gamma, double delta) {
  if (!(gamma > 0.0) || !(delta > 0.0)) throw DomainError("gamma and delta must be positive");
  const double ab = 1.0 / std::tanh(delta);
  const double root = std::sqrt(ab);
  return derive_params(gamma * root, root / gamma);
}

}  // namespace heatwf
