#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "heatwf/errors.hpp"
#include "heatwf/filter.hpp"
#include "heatwf/hermite.hpp"
#include "heatwf/numeric.hpp"
#include "heatwf/params.hpp"
#include "heatwf/spectrum.hpp"
#include "oracles.hpp"

using namespace heatwf;
using doctest::Approx;

namespace {

double sup_error(const std::vector<double>& a, const std::vector<double>& b) {
  double e = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a[i] - b[i]));
  return e;
}

}  // namespace

TEST_CASE("derive_params matches high-precision values") {
  const FilterParams p = derive_params(1.0, 2.0);
  const oracle::Derived o = oracle::derive(1.0, 2.0);
  CHECK(p.delta() == Approx(o.delta).epsilon(1e-15));
  CHECK(p.rho() == Approx(o.rho).epsilon(1e-15));
  CHECK(p.gamma() == Approx(o.gamma).epsilon(1e-15));
  CHECK(p.delta() == Approx(0.5493061).epsilon(1e-7));
  CHECK(p.rho() == Approx(0.5773503).epsilon(1e-7));
  CHECK(p.gamma() == Approx(0.7071068).epsilon(1e-7));

  const FilterParams q = derive_params(5.0, 10.0);
  CHECK(q.time_bandwidth() == 50.0);
  CHECK(q.delta() == Approx(oracle::derive(5.0, 10.0).delta).epsilon(1e-15));
  CHECK(q.delta() == Approx(0.0200027).epsilon(1e-6));
}

TEST_CASE("derive_params rejects the uncertainty bound") {
  CHECK_THROWS_AS(derive_params(1.0, 1.0), DomainError);
  CHECK_THROWS_AS(derive_params(0.5, 1.5), DomainError);
  CHECK_THROWS_AS(derive_params(-2.0, -2.0), DomainError);
  CHECK_THROWS_AS(derive_params(std::nan(""), 3.0), DomainError);
  CHECK_THROWS_AS(params_from_product(1.0), DomainError);
  CHECK_THROWS_WITH(derive_params(1.0, 1.0), doctest::Contains("uncertainty bound violated"));
}

TEST_CASE("parameter coupling holds across a wide range") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> log_ab(std::log(1.0001), std::log(1e6));
  std::uniform_real_distribution<double> log_aspect(-3.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const FilterParams p = params_from_product(std::exp(log_ab(rng)), std::exp(log_aspect(rng)));
    const double ab = p.alpha() * p.beta();
    CHECK(std::abs(1.0 / std::tanh(p.delta()) / ab - 1.0) < 1e-14);
    CHECK(std::abs(p.rho() - std::exp(-p.delta())) < 1e-14);
    CHECK(p.gamma() == Approx(std::sqrt(p.alpha() / p.beta())).epsilon(1e-15));
    const oracle::Derived o = oracle::derive(p.alpha(), p.beta());
    CHECK(p.delta() == Approx(o.delta).epsilon(1e-13));
    CHECK(p.cosh_delta() == Approx(o.cosh_delta).epsilon(1e-14));
  }
}

TEST_CASE("params_from_gamma_delta inverts the coupling") {
  const FilterParams p = params_from_gamma_delta(0.7, 0.3);
  CHECK(p.delta() == Approx(0.3).epsilon(1e-14));
  CHECK(p.gamma() == Approx(0.7).epsilon(1e-14));
  CHECK_THROWS_AS(params_from_gamma_delta(1.0, 0.0), DomainError);
}

TEST_CASE("spectrum at alpha*beta = 2") {
  const FilterParams p = derive_params(1.0, 2.0);
  const SpectrumTruncation s = spectrum(p, 1e-14);
  REQUIRE(s.size() >= 2);
  CHECK(s.eigenvalues[0] == Approx(0.5773503).epsilon(1e-7));
  CHECK(s.eigenvalues[1] == Approx(0.1924501).epsilon(1e-6));
  CHECK(s.listed_sum() + s.tail_bound == Approx(std::sqrt(3.0) / 2.0).epsilon(1e-14));
  CHECK(s.tail_bound <= 1e-14);
  const std::vector<double> lam = oracle::eigenvalues(2.0);
  for (std::size_t k = 0; k < s.size(); ++k) CHECK(s.eigenvalues[k] == Approx(lam[k]).epsilon(1e-14));
}

TEST_CASE("spectrum truncation is the smallest admissible") {
  const FilterParams p = params_from_product(50.0);
  const SpectrumTruncation s = spectrum(p, 1e-9);
  CHECK(eigenvalue_tail(p, s.size()) <= 1e-9);
  CHECK(eigenvalue_tail(p, s.size() - 1) > 1e-9);
  CHECK(s.tail_bound == eigenvalue_tail(p, s.size()));

  const SpectrumTruncation empty = spectrum(p, 1.0e3);
  CHECK(empty.size() == 0);
  CHECK(empty.tail_bound == Approx(p.rho() / (1.0 - p.rho() * p.rho())).epsilon(1e-13));
}

TEST_CASE("trace and power-trace identities") {
  for (double ab : {1.1, 2.0, 10.0, 50.0, 1000.0, 1e4}) {
    const FilterParams p = params_from_product(ab);
    const SpectrumTruncation s = spectrum(p, 1e-16 * power_trace(p, 1));
    CHECK(s.listed_sum() + s.tail_bound == Approx(ab / (2.0 * p.cosh_delta())).epsilon(1e-12));
    for (int n = 1; n <= 3; ++n) {
      oracle::mp sum = 0;
      for (double l : oracle::eigenvalues(ab, 1e-60)) sum += pow(oracle::mp(l), n);
      CHECK(power_trace(p, n) == Approx(static_cast<double>(sum)).epsilon(1e-10));
    }
  }
}

TEST_CASE("hermite functions at known points") {
  CHECK(hermite_function(0, 0.0) == Approx(0.7511255).epsilon(1e-7));
  CHECK(hermite_function(1, 0.0) == 0.0);
  const HermiteBasis b2(2.0, 3);
  CHECK(b2(0, 0.0) == Approx(0.5311260).epsilon(1e-7));
  CHECK_THROWS_AS(b2(4, 0.0), UsageError);
  CHECK_THROWS_AS(b2(-1, 0.0), UsageError);
}

TEST_CASE("hermite recurrence agrees with the explicit polynomial") {
  for (int k = 0; k <= 12; ++k) {
    for (double x : {-6.5, -2.0, -0.3, 0.0, 0.7, 1.9, 4.4, 9.0}) {
      CHECK(hermite_function(k, x) == Approx(oracle::hermite(k, x)).epsilon(1e-12).scale(1e-3));
    }
  }
}

TEST_CASE("hermite functions stay finite far out and at high order") {
  std::vector<double> out(201);
  hermite_functions(40.0, out);
  for (double v : out) CHECK(std::isfinite(v));
  CHECK(out[0] == 0.0);  // e^-800 underflows
  CHECK(std::abs(hermite_function(200, 0.5)) < 1.0);
  const quad::Result norm =
      quad::integrate([](double x) { return std::pow(hermite_function(0, x), 2); }, -12.0, 12.0);
  CHECK(norm.value == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("apply_spectral semigroup") {
  const FilterParams p = derive_params(1.0, 2.0);
  const std::vector<double> e0{1.0, 0.0, 0.0};
  CHECK(apply_spectral(p, e0)[0] == Approx(std::pow(3.0, -0.25)).epsilon(1e-14));
  const std::vector<double> zero(5, 0.0);
  for (double v : apply_spectral(p, zero)) CHECK(v == 0.0);

  const std::vector<double> a{0.3, -1.2, 2.0, 0.5, -0.7};
  const std::vector<double> twice = apply_spectral(p, apply_spectral(p, a));
  const std::vector<double> once = apply_spectral(2.0 * p.delta(), a);
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(twice[k] == Approx(once[k]).epsilon(1e-14));
    CHECK(once[k] == Approx(std::pow(p.rho(), 2.0 * k + 1.0) * a[k]).epsilon(1e-13));
  }
}

TEST_CASE("kernel form reproduces the eigenfunctions") {
  for (double ab : {2.0, 50.0}) {
    const FilterParams p = params_from_product(ab, ab == 2.0 ? 0.5 : 1.0);
    const HermiteBasis basis(p.gamma(), 10);
    const UniformGrid grid = default_kernel_grid(p, 10);
    for (int k : {0, 1, 5, 10}) {
      const std::vector<double> f = sample_basis(basis, k, grid);
      const std::vector<double> g = apply_kernel(p, f, grid);
      std::vector<double> expected(f.size());
      for (std::size_t i = 0; i < f.size(); ++i) expected[i] = std::pow(p.rho(), k + 0.5) * f[i];
      CHECK(sup_error(g, expected) < 1e-6);
    }
    const std::vector<double> zero(grid.count, 0.0);
    CHECK(sup_error(apply_kernel(p, zero, grid), zero) == 0.0);
  }
}

TEST_CASE("apply_kernel guards its grid") {
  const FilterParams p = params_from_product(4.0);
  UniformGrid coarse = UniformGrid::symmetric(10.0, 1.0);
  std::vector<double> f(coarse.count, 1.0);
  CHECK_THROWS_AS(apply_kernel(p, f, coarse), AccuracyError);
  UniformGrid fine = UniformGrid::symmetric(10.0, 0.05);
  CHECK_THROWS_AS(apply_kernel(p, f, fine), UsageError);
}

TEST_CASE("filter kernel symmetry at twice the semigroup parameter") {
  const FilterParams p = params_from_product(3.0, 2.0);
  const FilterParams p2 = params_from_gamma_delta(p.gamma(), 2.0 * p.delta());
  for (double t : {-1.3, 0.0, 0.4, 2.2}) {
    for (double s : {-0.8, 0.1, 1.7}) CHECK(filter_kernel(p2, t, s) == Approx(filter_kernel(p2, s, t)).epsilon(1e-13));
  }
  // Mehler: kernel of P_2delta = sum rho^(2k+1) (D H_k)(t) (D H_k)(s)
  double mehler = 0.0;
  for (int k = 0; k < 70; ++k) {
    mehler += std::pow(p.rho(), 2 * k + 1) * oracle::dilated_hermite(k, p.gamma(), 0.3) *
              oracle::dilated_hermite(k, p.gamma(), -0.5);
  }
  CHECK(filter_kernel(p2, 0.3, -0.5) == Approx(mehler).epsilon(1e-12));
}

TEST_CASE("gram matrix is the identity to order 60") {
  const FilterParams p = params_from_product(5.0, 3.0);
  const HermiteBasis basis(p.gamma(), 60);
  const UniformGrid grid = default_kernel_grid(p, 60);
  const std::vector<double> g = gram_matrix(basis, grid);
  double err = 0.0;
  for (int j = 0; j <= 60; ++j) {
    for (int k = 0; k <= 60; ++k) err = std::max(err, std::abs(g[j * 61 + k] - (j == k ? 1.0 : 0.0)));
  }
  CHECK(err < 1e-8);
}

TEST_CASE("projection recovers coefficients") {
  const FilterParams p = params_from_product(6.0);
  const HermiteBasis basis(p.gamma(), 8);
  const UniformGrid grid = default_kernel_grid(p, 8);
  const std::vector<double> a{0.5, 0.0, -1.0, 0.25, 0.0, 0.0, 2.0, 0.0, -0.125};
  std::vector<double> f(grid.count, 0.0);
  for (std::size_t i = 0; i < grid.count; ++i) {
    const std::vector<double> h = basis.values(grid.at(i));
    for (std::size_t k = 0; k < a.size(); ++k) f[i] += a[k] * h[k];
  }
  const std::vector<double> back = project(basis, f, grid);
  CHECK(sup_error(back, a) < 1e-10);
}

TEST_CASE("weyl symbol") {
  const FilterParams p = derive_params(1.0, 2.0);
  CHECK(weyl_symbol(p, 0.0, 0.0) == Approx(std::sqrt(3.0) / 2.0).epsilon(1e-14));
  CHECK(weyl_symbol(p, 50.0, 0.0) == 0.0);
  const double integral =
      oracle::plane_integral([&](double u) { return std::exp(-u) / p.cosh_delta(); }, 2.0, 0.0, 60.0);
  CHECK(integral / (2.0 * std::numbers::pi) == Approx(std::sqrt(3.0) / 2.0).epsilon(1e-12));
  const quad::Result q = quad::integrate_ellipse([&](double x, double xi) { return weyl_symbol(p, x, xi); }, p.alpha(),
                                                 p.beta(), 60.0, {}, 1e-12);
  CHECK(q.value / (2.0 * std::numbers::pi) == Approx(std::sqrt(3.0) / 2.0).epsilon(1e-10));
}

TEST_CASE("weyl symbol of powers matches the semigroup") {
  const FilterParams p = params_from_product(3.0, 1.5);
  for (int n : {1, 2, 3}) {
    const FilterParams pn = params_from_gamma_delta(p.gamma(), n * p.delta());
    for (double x : {0.0, 0.6, -1.4}) {
      for (double xi : {0.0, 0.9}) {
        CHECK(weyl_symbol_power(p, n, x, xi) == Approx(weyl_symbol(pn, x, xi)).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("TFFunction kinds") {
  const FilterParams p = params_from_product(2.0);
  const TFFunction w(TFFunction::Kind::weyl_symbol, p);
  const TFFunction n(TFFunction::Kind::noise_profile, p, 3.0);
  const TFFunction phi(TFFunction::Kind::wvs, p, 2.0);
  CHECK(w.center() == Approx(std::sqrt(3.0) / 2.0).epsilon(1e-14));
  CHECK(n(0.4, -0.2) * w(0.4, -0.2) == Approx(3.0 / (2.0 * std::numbers::pi)).epsilon(1e-13));
  CHECK(phi(0.4, -0.2) == Approx(2.0 * w(0.4, -0.2) / (2.0 * std::numbers::pi)).epsilon(1e-13));
}

TEST_CASE("quadrature helpers") {
  const quad::Result r = quad::integrate([](double x) { return std::exp(-x * x); }, -10.0, 10.0);
  CHECK(r.value == Approx(std::sqrt(std::numbers::pi)).epsilon(1e-13));
  const std::vector<double> bp{0.5};
  const quad::Result kink = quad::integrate([](double x) { return std::abs(x - 0.5); }, 0.0, 1.0, bp);
  CHECK(kink.value == Approx(0.25).epsilon(1e-14));
  const quad::Rule gl = quad::gauss_legendre(12, -1.0, 1.0);
  double s = 0.0;
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) s += gl.weights[i] * std::pow(gl.nodes[i], 22);
  CHECK(s == Approx(2.0 / 23.0).epsilon(1e-13));

  CompensatedSum cs;
  cs += 1.0;
  for (int i = 0; i < 1000; ++i) cs += 1e-16;
  cs += -1.0;
  CHECK(cs.value() == Approx(1e-13).epsilon(1e-10));
}
