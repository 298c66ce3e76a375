#pragma once

// Reference implementations used only by the tests. They share no code with
// the library: high-precision arithmetic, explicit sums and plain bisection.

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/factorials.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

using mp = boost::multiprecision::cpp_bin_float_50;

struct Derived {
  double gamma;
  double delta;
  double rho;
  double cosh_delta;
};

// arccoth, rho and cosh delta evaluated in 50-digit arithmetic
inline Derived derive(double alpha, double beta) {
  const mp a(alpha);
  const mp b(beta);
  const mp ab = a * b;
  const mp delta = log((ab + 1) / (ab - 1)) / 2;
  return {static_cast<double>(sqrt(a / b)), static_cast<double>(delta), static_cast<double>(exp(-delta)),
          static_cast<double>(cosh(delta))};
}

inline mp mp_delta(double ab) {
  const mp x(ab);
  return log((x + 1) / (x - 1)) / 2;
}

// lambda_k listed until they drop below floor * lambda_0
inline std::vector<double> eigenvalues(double ab, double floor = 1e-40) {
  const mp rho = exp(-mp_delta(ab));
  std::vector<double> out;
  mp lam = rho;
  while (lam > rho * floor) {
    out.push_back(static_cast<double>(lam));
    lam *= rho * rho;
  }
  return out;
}

// Orthonormal Hermite function from the explicit polynomial sum, 50 digits
inline double hermite(int k, double x) {
  const mp X(x);
  mp h0 = 1;
  mp h1 = 2 * X;
  mp hk = k == 0 ? h0 : h1;
  for (int j = 1; j < k; ++j) {
    hk = 2 * X * h1 - 2 * j * h0;
    h0 = h1;
    h1 = hk;
  }
  const mp norm = sqrt(pow(mp(2), k) * boost::math::factorial<mp>(static_cast<unsigned>(k)) *
                       sqrt(boost::math::constants::pi<mp>()));
  return static_cast<double>(hk * exp(-X * X / 2) / norm);
}

inline double dilated_hermite(int k, double gamma, double t) { return hermite(k, t / gamma) / std::sqrt(gamma); }

struct Allocation {
  double level;
  double value;
  std::size_t active;
};

// Capacity waterfilling by bisection on the level over explicit noise variances.
inline Allocation capacity(double ab, double S, double theta2) {
  const std::vector<double> lam = eigenvalues(ab, 1e-30);
  std::vector<double> nu2;
  for (double l : lam) nu2.push_back(theta2 / l);
  auto spent = [&](double level) {
    double s = 0.0;
    for (double n : nu2) s += std::max(0.0, level - n);
    return s;
  };
  double lo = nu2.front();
  double hi = nu2.front() + S;
  for (int i = 0; i < 300; ++i) {
    const double mid = 0.5 * (lo + hi);
    (spent(mid) < S ? lo : hi) = mid;
  }
  const double level = 0.5 * (lo + hi);
  double c = 0.0;
  std::size_t active = 0;
  for (double n : nu2) {
    if (n < level) {
      c += 0.5 * std::log(level / n);
      ++active;
    }
  }
  return {level, c, active};
}

// Reverse waterfilling by bisection on the water table over explicit variances.
inline Allocation rate_distortion(double ab, double sigma2, double D) {
  const std::vector<double> lam = eigenvalues(ab, 1e-30);
  std::vector<double> var;
  for (double l : lam) var.push_back(sigma2 * l);
  auto distortion = [&](double table) {
    double d = 0.0;
    for (double v : var) d += std::min(table, v);
    return d;
  };
  double lo = 0.0;
  double hi = var.front();
  for (int i = 0; i < 300; ++i) {
    const double mid = 0.5 * (lo + hi);
    (distortion(mid) < D ? lo : hi) = mid;
  }
  const double table = 0.5 * (lo + hi);
  double r = 0.0;
  std::size_t active = 0;
  for (double v : var) {
    if (v > table) {
      r += 0.5 * std::log(v / table);
      ++active;
    }
  }
  return {table, r, active};
}

// iint f dt dw for a radial f(r2) of the scaled radius r2 = t^2/alpha^2 + w^2/beta^2,
// in polar form: pi alpha beta int_0^inf f(u) du.
inline double plane_integral(const std::function<double(double)>& f, double ab, double kink, double upper) {
  using boost::math::quadrature::gauss_kronrod;
  double total = 0.0;
  if (kink > 0.0) total += gauss_kronrod<double, 61>::integrate(f, 0.0, kink, 20, 1e-14);
  total += gauss_kronrod<double, 61>::integrate(f, std::max(kink, 0.0), upper, 20, 1e-14);
  return std::numbers::pi * ab * total;
}

}  // namespace oracle
