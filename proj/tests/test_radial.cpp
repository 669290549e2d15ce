#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "hitchin/radial.hpp"

using namespace hitchin;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

double psi_at(const RadialProfile& p, double r) {
  double dr = p.r[1] - p.r[0];
  auto i = static_cast<std::size_t>(std::lround(r / dr));
  REQUIRE(std::abs(p.r[i] - r) < 1e-12);
  return p.psi[i];
}
}  // namespace

TEST_CASE("n=1 flux is pi/2") {
  RadialProfile p = solve_radial(1, 0.0, 20.0, 2000);
  CHECK(p.converged);
  CHECK(std::abs(flux(p) - kPi / 2.0) / (kPi / 2.0) < 1e-4);
}

TEST_CASE("n=2, B=0 flux is pi") {
  RadialProfile p = solve_radial(2, 0.0, 20.0, 2000);
  CHECK(std::abs(flux(p) - kPi) / kPi < 1e-4);
}

TEST_CASE("n=1 profile satisfies the Painleve III reduction") {
  RadialProfile p = solve_radial(1, 0.0, 20.0, 2000);
  CHECK(painleve_residual(p) < 1e-4);
  CHECK(std::abs(painleve_h_end(p) - 1.0) < 1e-3);

  // the residual must actually detect a wrong profile
  double base = painleve_residual(p);
  RadialProfile q = p;
  for (std::size_t i = 0; i < q.r.size(); ++i) q.psi[i] += 0.2 * std::exp(-q.r[i]);
  CHECK(painleve_residual(q) > 100.0 * base);
  CHECK(painleve_residual(q) > 1e-3);
}

TEST_CASE("grid refinement converges at second order") {
  RadialProfile a = solve_radial(1, 0.0, 20.0, 501);
  RadialProfile b = solve_radial(1, 0.0, 20.0, 1001);
  RadialProfile c = solve_radial(1, 0.0, 20.0, 2001);
  double e1 = std::abs(psi_at(a, 1.0) - psi_at(b, 1.0));
  double e2 = std::abs(psi_at(b, 1.0) - psi_at(c, 1.0));
  REQUIRE(e2 > 0.0);
  double ratio = e1 / e2;
  CHECK(ratio > 2.5);
  CHECK(ratio < 6.0);
  CHECK(e2 < 1e-4);
}

TEST_CASE("flux is insensitive to the truncation radius") {
  RadialProfile a = solve_radial(1, 0.0, 15.0, 1500);
  RadialProfile b = solve_radial(1, 0.0, 25.0, 2500);
  CHECK(std::abs(flux(a) - flux(b)) / flux(b) < 1e-3);
}

TEST_CASE("flux decays with the deformation parameter") {
  auto scan = scan_B({0.0, 2.0, 5.0, 10.0, 25.0, 50.0}, 20.0, 2000);
  REQUIRE(scan.size() == 6);
  CHECK(scan[0].second == doctest::Approx(1.0).epsilon(1e-3));
  for (std::size_t i = 1; i < scan.size(); ++i) CHECK(scan[i].second < scan[i - 1].second);
  double at10 = scan[3].second, at50 = scan[5].second;
  CHECK(at10 < 0.5);
  CHECK(at50 < 0.5 * at10);
  CHECK(at50 < 0.1);
}

TEST_CASE("scan input validation") {
  CHECK_THROWS_AS(scan_B({1.0, 2.0}, 20.0, 2000), std::invalid_argument);
  CHECK_THROWS_AS(scan_B({0.0, 2.0, 2.0}, 20.0, 2000), std::invalid_argument);
  CHECK_THROWS_AS(scan_B({}, 20.0, 2000), std::invalid_argument);
}

TEST_CASE("solver preconditions") {
  CHECK_THROWS_AS(solve_radial(3, 0.0, 20.0, 2000), std::invalid_argument);
  CHECK_THROWS_AS(solve_radial(1, 0.5, 20.0, 2000), std::invalid_argument);
  CHECK_THROWS_AS(solve_radial(2, -1.0, 20.0, 2000), std::invalid_argument);
  CHECK_THROWS_AS(solve_radial(1, 0.0, 5.0, 2000), std::invalid_argument);
  CHECK_THROWS_AS(solve_radial(1, 0.0, 20.0, 100), std::invalid_argument);
}

TEST_CASE("profile shape invariants") {
  RadialProfile p = solve_radial(1, 0.0, 20.0, 2000);
  auto d = dpsi_dr(p);
  CHECK(d[0] == 0.0);
  CHECK(std::abs(d[1]) < 0.05);
  // boundary value matches the prescribed asymptote, so |F| vanishes there
  CHECK(p.psi.back() == doctest::Approx(-std::log(20.0)));
  CHECK(absF(p).back() < 1e-9);
  CHECK(radial_residual_scaled(p) < 1e-9);
}

TEST_CASE("warm start from a solved profile needs no further iterations") {
  RadialProfile p = solve_radial(2, 1.0, 20.0, 1000);
  RadialProfile q = solve_radial(2, 1.0, 20.0, 1000, &p);
  CHECK(q.newton_iters <= 1);
  RadialProfile s = solve_radial(2, 1.5, 20.0, 1000, &p);
  CHECK(s.newton_iters <= p.newton_iters);
}

TEST_CASE("flux refuses an unconverged profile") {
  RadialProfile empty;
  CHECK_THROWS_AS(flux(empty), std::logic_error);
}

TEST_CASE("Painleve checks are n=1 only") {
  RadialProfile p = solve_radial(2, 0.0, 20.0, 1000);
  CHECK_THROWS_AS(painleve_residual(p), std::invalid_argument);
}
