#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <vector>

namespace heatwf {

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(double x) noexcept {
    add(x);
    return *this;
  }
  double value() const noexcept { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

/// Uniform sampling grid start + i*step, i = 0..count-1.
struct UniformGrid {
  double start = 0.0;
  double step = 1.0;
  std::size_t count = 0;

  double at(std::size_t i) const noexcept { return start + static_cast<double>(i) * step; }
  double stop() const noexcept { return count == 0 ? start : at(count - 1); }
  std::vector<double> points() const;

  /// Grid symmetric about zero covering [-half_width, half_width] with spacing <= max_step.
  static UniformGrid symmetric(double half_width, double max_step);
};

/// Trapezoid rule over samples on a uniform grid.
double trapezoid(std::span<const double> samples, double step);

namespace quad {

struct Result {
  double value = 0.0;
  double error = 0.0;
};

/// Adaptive 21-point Gauss-Kronrod on [a, b], refined until the error
/// estimate is below rel_tol times the L1 norm.
Result integrate(const std::function<double(double)>& f, double a, double b, double rel_tol = 1e-12,
                 unsigned max_depth = 20);

/// Same, split at the given interior breakpoints (points outside (a, b) are ignored).
Result integrate(const std::function<double(double)>& f, double a, double b, std::span<const double> breakpoints,
                 double rel_tol = 1e-12, unsigned max_depth = 20);

/// Nested adaptive quadrature of f(t, w) over the scaled disc
/// t^2/alpha^2 + w^2/beta^2 <= r2_max, with integration breakpoints placed on
/// the concentric ellipses t^2/alpha^2 + w^2/beta^2 = k for each k in kink_r2.
/// Integrands that are smooth except across those ellipses converge fast.
Result integrate_ellipse(const std::function<double(double, double)>& f, double alpha, double beta, double r2_max,
                         std::span<const double> kink_r2 = {}, double rel_tol = 1e-12);

/// n-point Gauss-Legendre nodes and weights on [a, b].
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
Rule gauss_legendre(std::size_t n, double a, double b);

}  // namespace quad

}  // namespace heatwf
