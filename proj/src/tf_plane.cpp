#include "heatwf/tf_plane.hpp"

#include <algorithm>
#include <array>
#include <boost/math/constants/constants.hpp>
#include <cmath>
#include <string>

#include "heatwf/errors.hpp"
#include "heatwf/numeric.hpp"

namespace heatwf {

namespace {

constexpr double kPi = boost::math::constants::pi<double>();
constexpr double kTwoPi = boost::math::constants::two_pi<double>();
constexpr double kLn2 = boost::math::constants::ln_two<double>();

// Parameters within this relative distance of their threshold count as on it.
constexpr double kThresholdSlack = 1e-15;
// Phi-type integrands are cut at r^2 = (active radius^2) + this, a relative loss of e^-50.
constexpr double kDecayMargin = 50.0;
constexpr double kQuadTol = 1e-12;

// u e^u - (e^u - 1), accurate for small u.
double power_shape(double u) {
  if (u < 0.1) {
    // sum_{n >= 2} (n - 1) u^n / n!
    double term = u;  // u^n / n! at n = 1
    double sum = 0.0;
    for (int n = 2; n < 30; ++n) {
      term *= u / n;
      sum += (n - 1) * term;
    }
    return sum;
  }
  return u * std::exp(u) - std::expm1(u);
}

double ellipse_r2(double parameter, double threshold) {
  if (!(parameter > threshold * (1.0 + kThresholdSlack))) return 0.0;
  return std::log(parameter / threshold);
}

}  // namespace

const char* to_string(IntegralMethod method) noexcept {
  return method == IntegralMethod::radial_closed_form ? "radial_closed_form" : "quadrature_2d";
}

double noise_floor(const FilterParams& params, double theta2) { return theta2 * params.cosh_delta() / kTwoPi; }

double noise_profile(const FilterParams& params, double theta2, double t, double omega) {
  const double u = t / params.alpha();
  const double v = omega / params.beta();
  return noise_floor(params, theta2) * std::exp(u * u + v * v);
}

double wvs_peak(const FilterParams& params, double sigma2) { return sigma2 / (kTwoPi * params.cosh_delta()); }

double wvs(const FilterParams& params, double sigma2, double t, double omega) {
  const double u = t / params.alpha();
  const double v = omega / params.beta();
  return wvs_peak(params, sigma2) * std::exp(-(u * u + v * v));
}

double capacity_density(double noise, double level) { return 0.5 * std::log1p(std::max(0.0, level - noise) / noise); }

TFIntegralResult capacity_integral(const FilterParams& params, double theta2, double nu, IntegralMethod method) {
  if (!(nu > 0.0)) throw DomainError("water level nu must be positive");
  if (!(theta2 > 0.0)) throw DomainError("theta^2 must be positive");
  const double r2 = ellipse_r2(nu, noise_floor(params, theta2));
  TFIntegralResult out{nu, 0.0, method, r2};
  if (r2 == 0.0) return out;
  if (method == IntegralMethod::radial_closed_form) {
    out.value = params.time_bandwidth() * r2 * r2 / 8.0;
  } else {
    const auto f = [&](double t, double w) { return capacity_density(noise_profile(params, theta2, t, w), nu) / kTwoPi; };
    out.value = quad::integrate_ellipse(f, params.alpha(), params.beta(), r2, {}, kQuadTol).value;
  }
  return out;
}

TFIntegralResult power_integral(const FilterParams& params, double theta2, double nu, IntegralMethod method) {
  if (!(nu > 0.0)) throw DomainError("water level nu must be positive");
  if (!(theta2 > 0.0)) throw DomainError("theta^2 must be positive");
  const double c = noise_floor(params, theta2);
  const double r2 = ellipse_r2(nu, c);
  TFIntegralResult out{nu, 0.0, method, r2};
  if (r2 == 0.0) return out;
  if (method == IntegralMethod::radial_closed_form) {
    out.value = kPi * params.time_bandwidth() * c * power_shape(r2);
  } else {
    const auto f = [&](double t, double w) { return std::max(0.0, nu - noise_profile(params, theta2, t, w)); };
    out.value = quad::integrate_ellipse(f, params.alpha(), params.beta(), r2, {}, kQuadTol).value;
  }
  return out;
}

TFIntegralResult rate_integral(const FilterParams& params, double sigma2, double lambda, IntegralMethod method) {
  if (!(lambda > 0.0)) throw DomainError("lambda must be positive");
  if (!(sigma2 > 0.0)) throw DomainError("sigma^2 must be positive");
  const double p = wvs_peak(params, sigma2);
  // active region: Phi > lambda, i.e. r^2 < ln(p / lambda)
  const double r2 = (lambda * (1.0 + kThresholdSlack) < p) ? std::log(p / lambda) : 0.0;
  TFIntegralResult out{lambda, 0.0, method, r2};
  if (r2 == 0.0) return out;
  if (method == IntegralMethod::radial_closed_form) {
    out.value = params.time_bandwidth() * r2 * r2 / 8.0;
  } else {
    const auto f = [&](double t, double w) {
      return std::max(0.0, 0.5 * std::log(wvs(params, sigma2, t, w) / lambda)) / kTwoPi;
    };
    out.value = quad::integrate_ellipse(f, params.alpha(), params.beta(), r2, {}, kQuadTol).value;
  }
  return out;
}

TFIntegralResult distortion_integral(const FilterParams& params, double sigma2, double lambda, IntegralMethod method) {
  if (!(lambda > 0.0)) throw DomainError("lambda must be positive");
  if (!(sigma2 > 0.0)) throw DomainError("sigma^2 must be positive");
  const double p = wvs_peak(params, sigma2);
  const double r2 = (lambda * (1.0 + kThresholdSlack) < p) ? std::log(p / lambda) : 0.0;
  TFIntegralResult out{lambda, 0.0, method, r2};
  const double area = kPi * params.time_bandwidth();
  if (method == IntegralMethod::radial_closed_form) {
    out.value = r2 == 0.0 ? area * p : area * lambda * (1.0 + r2);
  } else {
    const auto f = [&](double t, double w) { return std::min(lambda, wvs(params, sigma2, t, w)); };
    const std::array<double, 1> kinks{r2};
    out.value = quad::integrate_ellipse(f, params.alpha(), params.beta(), r2 + kDecayMargin,
                                        r2 > 0.0 ? std::span<const double>(kinks) : std::span<const double>(),
                                        kQuadTol)
                    .value;
  }
  return out;
}

double solve_nu(const FilterParams& params, double theta2, double S) {
  if (!(S > 0.0) || !std::isfinite(S)) throw DomainError("power budget S must be positive");
  if (!(theta2 > 0.0)) throw DomainError("theta^2 must be positive");
  const double c = noise_floor(params, theta2);
  const double scale = kPi * params.time_bandwidth() * c;
  const auto power_at = [&](double u) { return scale * power_shape(u); };

  double lo = 0.0;
  double hi = 64.0;
  while (power_at(hi) < S) {
    hi *= 2.0;
    if (hi > 700.0) throw DomainError("solve_nu: S = " + format_number(S) + " cannot be bracketed");
  }
  for (int iter = 0; iter < 400; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (power_at(mid) < S ? lo : hi) = mid;
  }
  const double u = std::abs(power_at(lo) - S) <= std::abs(power_at(hi) - S) ? lo : hi;
  return c * std::exp(u);
}

double solve_lambda(const FilterParams& params, double sigma2, double D) {
  if (!(sigma2 > 0.0)) throw DomainError("sigma^2 must be positive");
  if (!(D > 0.0)) throw DomainError("distortion D must be positive");
  const double p = wvs_peak(params, sigma2);
  const double energy = kPi * params.time_bandwidth() * p;
  if (D > energy * (1.0 + 1e-14)) {
    throw DomainError("distortion exceeds source energy: D = " + format_number(D) + " > E = " + format_number(energy));
  }
  if (D >= energy) return p;
  // lambda = p e^-u, D(u) = E e^-u (1 + u), decreasing in u
  const auto distortion_at = [&](double u) { return energy * std::exp(-u) * (1.0 + u); };
  double lo = 0.0;
  double hi = 64.0;
  while (distortion_at(hi) > D) {
    hi *= 2.0;
    if (hi > 1e5) throw DomainError("solve_lambda: D = " + format_number(D) + " cannot be bracketed");
  }
  for (int iter = 0; iter < 400; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (distortion_at(mid) > D ? lo : hi) = mid;
  }
  const double u = std::abs(distortion_at(lo) - D) <= std::abs(distortion_at(hi) - D) ? lo : hi;
  return p * std::exp(-u);
}

double noise_profile_lti(double beta, double theta2, double omega) {
  const double v = omega / beta;
  return theta2 / kTwoPi * std::exp(v * v);
}

GallagerResult gallager_lti(double beta, double theta2, double nu) {
  if (!(beta > 0.0) || !(theta2 > 0.0) || !(nu > 0.0)) throw DomainError("gallager_lti needs positive beta, theta^2, nu");
  GallagerResult out;
  const double floor = theta2 / kTwoPi;
  if (!(nu > floor * (1.0 + kThresholdSlack))) return out;
  out.band_edge = beta * std::sqrt(std::log(nu / floor));
  out.capacity_bits = quad::integrate(
                          [&](double w) { return capacity_density(noise_profile_lti(beta, theta2, w), nu); },
                          -out.band_edge, out.band_edge, kQuadTol)
                          .value /
                      (kTwoPi * kLn2);
  out.power = quad::integrate([&](double w) { return std::max(0.0, nu - noise_profile_lti(beta, theta2, w)); },
                              -out.band_edge, out.band_edge, kQuadTol)
                  .value;
  return out;
}

}  // namespace heatwf
