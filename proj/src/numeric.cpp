#include "heatwf/numeric.hpp"

#include <algorithm>
#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "heatwf/errors.hpp"

namespace heatwf {

std::vector<double> UniformGrid::points() const {
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = at(i);
  return out;
}

UniformGrid UniformGrid::symmetric(double half_width, double max_step) {
  if (!(half_width > 0.0) || !(max_step > 0.0)) throw UsageError("grid half-width and step must be positive");
  const auto intervals_per_side = static_cast<std::size_t>(std::ceil(half_width / max_step));
  const double step = half_width / static_cast<double>(intervals_per_side);
  return UniformGrid{-half_width, step, 2 * intervals_per_side + 1};
}

double trapezoid(std::span<const double> samples, double step) {
  if (samples.size() < 2) return 0.0;
  CompensatedSum sum;
  sum += 0.5 * samples.front();
  for (std::size_t i = 1; i + 1 < samples.size(); ++i) sum += samples[i];
  sum += 0.5 * samples.back();
  return sum.value() * step;
}

namespace quad {

namespace {

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 21>;

std::vector<double> pieces(double a, double b, std::span<const double> breakpoints) {
  std::vector<double> cuts{a};
  for (double p : breakpoints) {
    if (p > a && p < b) cuts.push_back(p);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

}  // namespace

Result integrate(const std::function<double(double)>& f, double a, double b, double rel_tol, unsigned max_depth) {
  if (!(b > a)) return {};
  double error = 0.0;
  const double value = Kronrod::integrate(f, a, b, max_depth, rel_tol, &error);
  return {value, error};
}

Result integrate(const std::function<double(double)>& f, double a, double b, std::span<const double> breakpoints,
                 double rel_tol, unsigned max_depth) {
  const auto cuts = pieces(a, b, breakpoints);
  Result total;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const Result part = integrate(f, cuts[i], cuts[i + 1], rel_tol, max_depth);
    total.value += part.value;
    total.error += part.error;
  }
  return total;
}

Result integrate_ellipse(const std::function<double(double, double)>& f, double alpha, double beta, double r2_max,
                         std::span<const double> kink_r2, double rel_tol) {
  if (!(r2_max > 0.0)) return {};
  // Outer pieces end at the kink radii and at the boundary. Where a kink
  // ellipse (or the boundary) stops meeting the line t = const, the inner
  // integral behaves like a half-integer power of (k - u); t = r sin(theta)
  // on each piece turns that into a smooth integrand.
  std::vector<double> radii{0.0};
  for (double k : kink_r2) {
    if (k > 0.0 && k < r2_max) radii.push_back(k);
  }
  radii.push_back(r2_max);
  std::sort(radii.begin(), radii.end());
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());

  double inner_error = 0.0;
  const auto line = [&](double t, double tol, unsigned depth) {
    const double u = (t / alpha) * (t / alpha);
    if (u >= r2_max) return Result{};
    const double half = beta * std::sqrt(r2_max - u);
    std::vector<double> breaks{0.0};
    for (double k : kink_r2) {
      if (k > u && k < r2_max) {
        breaks.push_back(beta * std::sqrt(k - u));
        breaks.push_back(-beta * std::sqrt(k - u));
      }
    }
    return integrate([&](double w) { return f(t, w); }, -half, half, breaks, tol, depth);
  };
  // Inner accuracy is measured against the line through the centre: near the
  // boundary the line integrals are tiny and dominated by rounding, so a purely
  // relative target there cannot be met.
  const double scale = std::abs(line(0.0, 0.1 * rel_tol, 15).value);
  const auto inner = [&](double t) {
    const double rough = std::abs(line(t, 1.0, 0).value);
    double tol = 0.1 * rel_tol;
    if (rough > 0.0 && rough < scale) tol = std::min(1e-3, tol * scale / rough);
    const Result r = line(t, tol, 15);
    inner_error = std::max(inner_error, r.error);
    return r.value;
  };

  Result out;
  for (std::size_t i = 1; i < radii.size(); ++i) {
    const double r = alpha * std::sqrt(radii[i]);
    const double lo = std::asin(std::min(1.0, std::sqrt(radii[i - 1] / radii[i])));
    for (double side : {1.0, -1.0}) {
      const Result part = integrate(
          [&](double theta) { return inner(side * r * std::sin(theta)) * r * std::cos(theta); }, lo,
          0.5 * std::numbers::pi, rel_tol, 20);
      out.value += part.value;
      out.error += part.error;
    }
  }
  out.error += inner_error * 2.0 * alpha * std::sqrt(r2_max);
  return out;
}

Rule gauss_legendre(std::size_t n, double a, double b) {
  if (n == 0) throw UsageError("Gauss-Legendre rule needs at least one node");
  Rule rule{std::vector<double>(n), std::vector<double>(n)};
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double pi = boost::math::constants::pi<double>();
  const std::size_t m = (n + 1) / 2;
  for (std::size_t i = 0; i < m; ++i) {
    double z = std::cos(pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0;
      double p0 = 0.0;
      for (std::size_t j = 1; j <= n; ++j) {
        const double p2 = p0;
        p0 = p1;
        p1 = ((2.0 * j - 1.0) * z * p0 - (j - 1.0) * p2) / j;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[i] = mid - half * z;
    rule.nodes[n - 1 - i] = mid + half * z;
    rule.weights[i] = half * w;
    rule.weights[n - 1 - i] = half * w;
  }
  return rule;
}

}  // namespace quad

}  // namespace heatwf
