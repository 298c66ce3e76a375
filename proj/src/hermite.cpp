#include "heatwf/hermite.hpp"

#include <boost/math/constants/constants.hpp>
#include <cmath>
#include <string>

#include "heatwf/errors.hpp"

namespace heatwf {

namespace {

constexpr double kRescaleAbove = 1e150;

// Runs the recurrence on the polynomial part (initial value pi^(-1/4)) and
// keeps a running log scale; the result is multiplied by exp(log_scale) at the end.
void recurrence(double x, std::span<double> out) {
  if (out.empty()) return;
  const double quarter_pi = std::pow(boost::math::constants::pi<double>(), -0.25);
  double log_scale = -0.5 * x * x;
  double prev = 0.0;
  double cur = quarter_pi;
  out[0] = cur * std::exp(log_scale);
  for (std::size_t k = 0; k + 1 < out.size(); ++k) {
    const double kk = static_cast<double>(k);
    const double next = std::sqrt(2.0 / (kk + 1.0)) * x * cur - std::sqrt(kk / (kk + 1.0)) * prev;
    prev = cur;
    cur = next;
    if (std::abs(cur) > kRescaleAbove) {
      prev /= kRescaleAbove;
      cur /= kRescaleAbove;
      log_scale += std::log(kRescaleAbove);
    }
    out[k + 1] = cur * std::exp(log_scale);
  }
}

}  // namespace

double hermite_function(int k, double x) {
  if (k < 0) throw UsageError("Hermite order must be nonnegative");
  std::vector<double> buf(static_cast<std::size_t>(k) + 1);
  recurrence(x, buf);
  return buf.back();
}

void hermite_functions(double x, std::span<double> out) { recurrence(x, out); }

HermiteBasis::HermiteBasis(double gamma, int max_order)
    : gamma_(gamma), max_order_(max_order), norm_(1.0 / std::sqrt(gamma)) {
  if (!(gamma > 0.0)) throw DomainError("Hermite dilation gamma must be positive");
  if (max_order < 0) throw UsageError("max_order must be nonnegative");
}

double HermiteBasis::operator()(int k, double t) const {
  if (k < 0 || k > max_order_) {
    throw UsageError("Hermite order " + std::to_string(k) + " outside basis range [0, " +
                     std::to_string(max_order_) + "]");
  }
  return norm_ * hermite_function(k, t / gamma_);
}

std::vector<double> HermiteBasis::values(double t) const {
  std::vector<double> out(static_cast<std::size_t>(max_order_) + 1);
  values(t, out);
  return out;
}

void HermiteBasis::values(double t, std::span<double> out) const {
  recurrence(t / gamma_, out);
  for (double& v : out) v *= norm_;
}

}  // namespace heatwf
