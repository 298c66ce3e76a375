#pragma once

#include <span>
#include <vector>

namespace heatwf {

/// Orthonormal Hermite function H_k(x) = (2^k k! sqrt(pi))^(-1/2) h_k(x) exp(-x^2/2),
/// evaluated by the normalised three-term recurrence
///   H_{k+1}(x) = sqrt(2/(k+1)) x H_k(x) - sqrt(k/(k+1)) H_{k-1}(x),
/// with H_0(x) = pi^(-1/4) exp(-x^2/2). The Gaussian factor is carried in
/// log form so large |x| does not underflow before the recurrence grows.
double hermite_function(int k, double x);

/// Writes H_0(x) .. H_{out.size()-1}(x) into out.
void hermite_functions(double x, std::span<double> out);

/// Dilated orthonormal basis (D_gamma H_k)(t) = gamma^(-1/2) H_k(t / gamma), k <= max_order.
class HermiteBasis {
 public:
  HermiteBasis(double gamma, int max_order);

  double gamma() const noexcept { return gamma_; }
  int max_order() const noexcept { return max_order_; }

  /// (D_gamma H_k)(t). Throws UsageError if k is outside [0, max_order].
  double operator()(int k, double t) const;

  /// All orders 0..max_order at t.
  std::vector<double> values(double t) const;
  void values(double t, std::span<double> out) const;

 private:
  double gamma_;
  int max_order_;
  double norm_;
};

}  // namespace heatwf
