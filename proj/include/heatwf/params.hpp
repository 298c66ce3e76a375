#pragma once

namespace heatwf {

/// Parameter bundle of the Gaussian time-frequency localisation filter.
///
/// alpha (time) and beta (frequency) are the free parameters; the dilation
/// gamma = sqrt(alpha/beta), the semigroup parameter delta = arccoth(alpha*beta)
/// and rho = exp(-delta) are derived from them. Instances can only be obtained
/// through the factory functions below, so every value satisfies the couplings.
class FilterParams {
 public:
  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  double gamma() const noexcept { return gamma_; }
  double delta() const noexcept { return delta_; }
  double rho() const noexcept { return rho_; }

  /// The time-frequency product alpha*beta (degrees of freedom).
  double time_bandwidth() const noexcept { return alpha_ * beta_; }
  double cosh_delta() const noexcept { return cosh_delta_; }

  friend FilterParams derive_params(double alpha, double beta);

 private:
  FilterParams(double alpha, double beta, double gamma, double delta, double rho);

  double alpha_;
  double beta_;
  double gamma_;
  double delta_;
  double rho_;
  double cosh_delta_;
};

/// Builds the bundle from (alpha, beta). Throws DomainError unless
/// alpha > 0, beta > 0 and alpha*beta > 1.
FilterParams derive_params(double alpha, double beta);

/// Convenience form: alpha*beta = product, alpha/beta = aspect.
FilterParams params_from_product(double product, double aspect = 1.0);

/// The member of the semigroup {P_delta} with the same dilation gamma and the
/// given delta > 0, i.e. alpha*beta = coth(delta), alpha/beta = gamma^2.
FilterParams params_from_gamma_delta(double gamma, double delta);

/// arccoth(x) = 0.5*ln((x+1)/(x-1)) for x > 1, evaluated via log1p.
double arccoth(double x);

}  // namespace heatwf
