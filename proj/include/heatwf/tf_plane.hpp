#pragma once

#include "heatwf/params.hpp"

namespace heatwf {

enum class IntegralMethod { radial_closed_form, quadrature_2d };

const char* to_string(IntegralMethod method) noexcept;

/// One time-frequency waterfilling integral.
///   parameter   - nu (capacity/power) or lambda (rate/distortion)
///   ellipse_r2  - scaled radius^2 of the active region, ln(parameter / c) for
///                 the noise integrals and ln(p / lambda) for the source integrals,
///                 clipped at zero
struct TFIntegralResult {
  double parameter = 0.0;
  double value = 0.0;
  IntegralMethod method = IntegralMethod::radial_closed_form;
  double ellipse_r2 = 0.0;
};

/// N(t, w) = (theta^2 / 2 pi) cosh(delta) exp(t^2/alpha^2 + w^2/beta^2).
double noise_profile(const FilterParams& params, double theta2, double t, double omega);
/// N(0, 0) = theta^2 cosh(delta) / 2 pi, the threshold c of the capacity integrals.
double noise_floor(const FilterParams& params, double theta2);

/// Phi(t, w) = (sigma^2 / 2 pi) exp(-t^2/alpha^2 - w^2/beta^2) / cosh(delta).
double wvs(const FilterParams& params, double sigma2, double t, double omega);
/// Phi(0, 0), the peak p of the source integrals.
double wvs_peak(const FilterParams& params, double sigma2);

/// Integrand of the capacity integral: 0.5 ln(1 + (level - noise)^+ / noise).
double capacity_density(double noise, double level);

/// (1/2pi) iint 0.5 ln(1 + (nu - N)^+ / N) dt dw; closed form alpha beta R^4 / 8.
TFIntegralResult capacity_integral(const FilterParams& params, double theta2, double nu,
                                   IntegralMethod method = IntegralMethod::radial_closed_form);

/// iint (nu - N)^+ dt dw; closed form pi alpha beta (nu ln(nu/c) - nu + c).
TFIntegralResult power_integral(const FilterParams& params, double theta2, double nu,
                                IntegralMethod method = IntegralMethod::radial_closed_form);

/// (1/2pi) iint max{0, 0.5 ln(Phi / lambda)} dt dw; closed form alpha beta R^4 / 8.
TFIntegralResult rate_integral(const FilterParams& params, double sigma2, double lambda,
                               IntegralMethod method = IntegralMethod::radial_closed_form);

/// iint min{lambda, Phi} dt dw; closed form pi alpha beta lambda (1 + ln(p / lambda)) for lambda < p, else E.
TFIntegralResult distortion_integral(const FilterParams& params, double sigma2, double lambda,
                                     IntegralMethod method = IntegralMethod::radial_closed_form);

/// nu with power_integral(nu) = S, by bisection on ln(nu / c) in (0, 64] (expanded if needed).
double solve_nu(const FilterParams& params, double theta2, double S);

/// lambda with distortion_integral(lambda) = D, by bisection on ln(p / lambda); D = E gives p.
double solve_lambda(const FilterParams& params, double sigma2, double D);

/// N_1(w) = (theta^2 / 2 pi) exp(w^2 / beta^2), the noise profile of the LTI limit.
double noise_profile_lti(double beta, double theta2, double omega);

struct GallagerResult {
  double capacity_bits = 0.0;  // (1/2pi) int 0.5 log2(1 + (nu - N_1)^+ / N_1) dw
  double power = 0.0;          // int (nu - N_1)^+ dw
  double band_edge = 0.0;      // active band |w| <= band_edge
};

/// Waterfilling over frequency for the Gaussian LTI filter, by adaptive quadrature over the active band.
GallagerResult gallager_lti(double beta, double theta2, double nu);

}  // namespace heatwf
