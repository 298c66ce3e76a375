#include <doctest.h>

#include <chrono>
#include <cmath>
#include <random>
#include <vector>

#include "heatwf/errors.hpp"
#include "heatwf/params.hpp"
#include "heatwf/spectrum.hpp"
#include "heatwf/waterfill.hpp"
#include "oracles.hpp"

using namespace heatwf;
using doctest::Approx;

TEST_CASE("capacity of the worked example at alpha*beta = 50") {
  const FilterParams p = derive_params(std::sqrt(50.0), std::sqrt(50.0));
  const WaterfillSolution sol = capacity_waterfill(p, 20.0, 0.01);
  CHECK(sol.value == Approx(75.1017).epsilon(5e-4 / 75.1017));
  CHECK(sol.budget_check == Approx(20.0).epsilon(1e-10));
  const oracle::Allocation o = oracle::capacity(50.0, 20.0, 0.01);
  CHECK(sol.value == Approx(o.value).epsilon(1e-10));
  CHECK(sol.level == Approx(o.level).epsilon(1e-10));
  CHECK(sol.active_count == o.active);
}

TEST_CASE("capacity with a single active subchannel") {
  const FilterParams p = derive_params(1.0, 2.0);
  const WaterfillSolution sol = capacity_waterfill(p, 1.0, 1.0);
  CHECK(sol.active_count == 1);
  CHECK(sol.level == Approx(1.0 + std::sqrt(3.0)).epsilon(1e-14));
  CHECK(sol.value == Approx(0.5 * std::log(2.7320508 / 1.7320508)).epsilon(1e-7));
  REQUIRE(sol.allocations.size() == 1);
  CHECK(sol.allocations[0] == Approx(1.0).epsilon(1e-14));
}

TEST_CASE("zero power gives zero capacity") {
  const WaterfillSolution sol = capacity_waterfill(params_from_product(7.0), 0.0, 0.3);
  CHECK(sol.value == 0.0);
  CHECK(sol.active_count == 0);
  CHECK(sol.allocations.empty());
}

TEST_CASE("capacity rejects invalid inputs") {
  const FilterParams p = params_from_product(3.0);
  CHECK_THROWS_AS(capacity_waterfill(p, -1.0, 1.0), DomainError);
  CHECK_THROWS_AS(capacity_waterfill(p, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(capacity_waterfill(p, std::nan(""), 1.0), DomainError);
}

TEST_CASE("capacity agrees with a brute-force bisection on random instances") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> log_ab(std::log(1.2), std::log(400.0));
  std::uniform_real_distribution<double> log_s(std::log(1e-3), std::log(500.0));
  std::uniform_real_distribution<double> log_theta(std::log(1e-3), std::log(10.0));
  for (int i = 0; i < 100; ++i) {
    const double ab = std::exp(log_ab(rng));
    const double S = std::exp(log_s(rng));
    const double theta2 = std::exp(log_theta(rng));
    const WaterfillSolution sol = capacity_waterfill(params_from_product(ab), S, theta2);
    const oracle::Allocation o = oracle::capacity(ab, S, theta2);
    CAPTURE(ab);
    CAPTURE(S);
    CAPTURE(theta2);
    CHECK(sol.level == Approx(o.level).epsilon(1e-8));
    CHECK(sol.value == Approx(o.value).epsilon(1e-8).scale(1e-8));
    CHECK(sol.budget_check == Approx(S).epsilon(1e-10));
  }
}

TEST_CASE("level equal to the next noise variance leaves it inactive") {
  const FilterParams p = derive_params(1.0, 2.0);
  const double nu0 = noise_variance(p, 1.0, 0);
  const double nu1 = noise_variance(p, 1.0, 1);
  const WaterfillSolution sol = capacity_waterfill(p, nu1 - nu0, 1.0);
  CHECK(sol.active_count == 1);
  CHECK(sol.level == Approx(nu1).epsilon(1e-14));
}

TEST_CASE("C(S) is nondecreasing and concave") {
  const FilterParams p = params_from_product(20.0);
  std::vector<double> c;
  for (int i = 0; i <= 60; ++i) c.push_back(capacity_waterfill(p, 0.25 * i, 0.05).value);
  for (std::size_t i = 1; i < c.size(); ++i) CHECK(c[i] >= c[i - 1]);
  for (std::size_t i = 1; i + 1 < c.size(); ++i) CHECK(c[i + 1] - 2.0 * c[i] + c[i - 1] <= 1e-12);
}

TEST_CASE("rate-distortion at alpha*beta = 2") {
  const FilterParams p = derive_params(1.0, 2.0);
  const WaterfillSolution sol = rd_reverse_waterfill(p, 0.5, 1.0);
  CHECK(sol.level == Approx(0.5 - (std::sqrt(3.0) / 2.0 - 1.0 / std::sqrt(3.0))).epsilon(1e-10));
  CHECK(sol.level == Approx(0.2113249).epsilon(1e-6));
  CHECK(sol.active_count == 1);
  CHECK(sol.value == Approx(0.50253).epsilon(1e-4 / 0.50253));
  CHECK(sol.budget_check == Approx(0.5).epsilon(1e-10));
  const oracle::Allocation o = oracle::rate_distortion(2.0, 1.0, 0.5);
  CHECK(sol.value == Approx(o.value).epsilon(1e-10));
}

TEST_CASE("rate is zero at D = E and the solver rejects D > E") {
  const FilterParams p = params_from_product(12.0);
  const double E = source_energy(p, 2.0);
  CHECK(E == Approx(2.0 * 12.0 / (2.0 * p.cosh_delta())).epsilon(1e-14));
  const WaterfillSolution sol = rd_reverse_waterfill(p, E, 2.0);
  CHECK(sol.value == 0.0);
  CHECK(sol.active_count == 0);
  CHECK_THROWS_AS(rd_reverse_waterfill(p, 1.001 * E, 2.0), DomainError);
  CHECK_THROWS_AS(rd_reverse_waterfill(p, 0.0, 2.0), DomainError);
  CHECK_THROWS_AS(rd_reverse_waterfill(p, 0.5, 0.0), DomainError);
}

TEST_CASE("small distortion still converges") {
  const FilterParams p = params_from_product(5.0);
  double previous = 0.0;
  for (double D : {1e-2, 1e-4, 1e-6, 1e-8}) {
    const WaterfillSolution sol = rd_reverse_waterfill(p, D, 1.0);
    CHECK(sol.level > 0.0);
    CHECK(sol.level < D);
    CHECK(sol.value > previous);
    CHECK(sol.budget_check == Approx(D).epsilon(1e-10));
    previous = sol.value;
  }
}

TEST_CASE("R(D) agrees with brute force and is convex") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> log_ab(std::log(1.2), std::log(400.0));
  std::uniform_real_distribution<double> frac(0.01, 0.99);
  for (int i = 0; i < 50; ++i) {
    const double ab = std::exp(log_ab(rng));
    const FilterParams p = params_from_product(ab);
    const double D = frac(rng) * source_energy(p, 1.5);
    const WaterfillSolution sol = rd_reverse_waterfill(p, D, 1.5);
    const oracle::Allocation o = oracle::rate_distortion(ab, 1.5, D);
    CHECK(sol.level == Approx(o.level).epsilon(1e-9));
    CHECK(sol.value == Approx(o.value).epsilon(1e-8).scale(1e-8));
    CHECK(sol.budget_check == Approx(D).epsilon(1e-10));
  }

  const FilterParams p = params_from_product(30.0);
  const double E = source_energy(p, 1.0);
  std::vector<double> r;
  for (int i = 1; i <= 50; ++i) r.push_back(rd_reverse_waterfill(p, E * i / 50.0, 1.0).value);
  for (std::size_t i = 1; i < r.size(); ++i) CHECK(r[i] <= r[i - 1]);
  for (std::size_t i = 1; i + 1 < r.size(); ++i) CHECK(r[i + 1] - 2.0 * r[i] + r[i - 1] >= -1e-12);
}

TEST_CASE("closed-form energy relations") {
  const FilterParams p2 = derive_params(1.0, 2.0);
  CHECK(closed_form_S(p2, 1.0, 1.0) == 0.0);
  const double x = 2.7320508;
  CHECK(closed_form_S(p2, x, 1.0) == Approx(x * std::log(x) - x + 1.0).epsilon(1e-14));
  CHECK(closed_form_S(p2, x, 1.0) == Approx(1.013804).epsilon(1e-6));
  CHECK(closed_form_D(p2, 1.0, 1.0) == Approx(1.0).epsilon(1e-15));
  const double y = 0.2113249;
  CHECK(closed_form_D(p2, 1.0, y) == Approx(y - y * std::log(y)).epsilon(1e-14));
  CHECK(std::abs(closed_form_D(p2, 1.0, y) - 0.5400) < 5e-4);
  CHECK(closed_form_D(p2, 1.0, 1e-300) < 1e-295);
  CHECK_THROWS_AS(closed_form_S(p2, 0.5, 1.0), DomainError);
  CHECK_THROWS_AS(closed_form_D(p2, 1.0, 2.0), DomainError);

  // at alpha*beta = 50 the closed form lands close to the exact budget
  const FilterParams p = params_from_product(50.0);
  const WaterfillSolution sol = capacity_waterfill(p, 20.0, 0.01);
  const double approx = closed_form_S(p, sol.level, 0.01);
  MESSAGE("closed-form S at the exact level: " << approx);
  CHECK(std::abs(approx - 20.0) / 50.0 < 0.01);
}

TEST_CASE("capacity runtime at the worked example") {
  const auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < 100; ++i) (void)capacity_waterfill(params_from_product(50.0), 20.0, 0.01);
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CHECK(elapsed < 1.0);
}
