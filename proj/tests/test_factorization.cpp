#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "hitchin/factorization.hpp"

using namespace hitchin;

TEST_CASE("product identity mu+ mu- = -H at random points") {
  std::mt19937 rng(77u);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  for (int t = 0; t < 50; ++t) {
    double a = std::abs(u(rng));
    cplx W(u(rng), u(rng));
    Factorization f = sminus_at(a, W);
    Cubic H(a, W * W * W + a * W);
    for (int s = 0; s < 8; ++s) {
      cplx z(u(rng), u(rng));
      cplx lhs = f.mu_plus.eval(z) * f.mu_minus.eval(z);
      cplx rhs = -H.eval(z);
      CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(rhs)));
    }
  }
}

TEST_CASE("sminus example at W = i, a = 3") {
  Factorization f = sminus_at(3.0, cplx(0.0, 1.0));  // K = 2i
  REQUIRE(f.mu_plus.degree() == 2);
  REQUIRE(f.mu_minus.degree() == 1);
  // mu+ = z^2 + i z + 2, mu- = -(z - i)
  CHECK(std::abs(f.mu_plus.c[0] - cplx(1.0)) < 1e-14);
  CHECK(std::abs(f.mu_plus.c[1] - cplx(0.0, 1.0)) < 1e-14);
  CHECK(std::abs(f.mu_plus.c[2] - cplx(2.0)) < 1e-14);
  CHECK(std::abs(f.mu_minus.c[0] + cplx(1.0)) < 1e-14);
  CHECK(std::abs(f.mu_minus.c[1] - cplx(0.0, 1.0)) < 1e-14);
  // mu+ vanishes at i and -2i
  CHECK(std::abs(f.mu_plus.eval(cplx(0.0, 1.0))) < 1e-13);
  CHECK(std::abs(f.mu_plus.eval(cplx(0.0, -2.0))) < 1e-13);
  CHECK(f.n() == 3);
  CHECK(f.max_root_radius() == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("sminus rejects W that is not a root of H") {
  CHECK_THROWS_AS(factorize_sminus(Cubic(3.0, cplx(5.0, 0.0)), cplx(0.0, 1.0)),
                  std::invalid_argument);
}

TEST_CASE("splus carries the whole cubic") {
  Factorization f = factorize_splus(Cubic(0.0, cplx(8.0, 0.0)));
  CHECK(f.mu_plus.degree() == 3);
  CHECK(f.mu_minus.degree() == 0);
  CHECK(f.n() == 3);
  Poly H = f.H();
  CHECK(std::abs(H.eval(cplx(2.0)) - cplx(0.0)) < 1e-12);  // z^3 - 8 at 2
  CHECK(f.max_root_radius() == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("boundary data balances the two exponential terms") {
  Factorization f = factorize_splus(Cubic(0.0, cplx(0.0)));
  // |mu+| = r^3, |mu-| = 1: psi_b = -3 log r
  CHECK(boundary_psi(f, cplx(10.0, 0.0)) == doctest::Approx(-3.0 * std::log(10.0)));
  // cancellation of two terms of size |z|^n, so machine-level absolute slack
  CHECK(gauge_field_magnitude(f, cplx(10.0, 0.0),
                              boundary_psi(f, cplx(10.0, 0.0))) < 1e-9);

  Factorization g = sminus_at(0.0, cplx(1.0, 0.0));
  // |mu+| ~ r^2, |mu-| ~ r far out: psi_b -> -log r + o(1)
  double big = 1e6;
  CHECK(boundary_psi(g, cplx(big, 0.0)) ==
        doctest::Approx(-std::log(big)).epsilon(1e-5));

  Factorization s = degenerate_split();
  CHECK(boundary_psi(s, cplx(3.0, 4.0)) == doctest::Approx(0.0));

  // at a zero of H the balance point does not exist
  CHECK_THROWS_AS(boundary_psi(f, cplx(0.0, 0.0)), std::domain_error);
}

TEST_CASE("degenerate split pair") {
  Factorization s = degenerate_split();
  CHECK(s.sheet == Factorization::Sheet::Split);
  CHECK(s.n() == 2);
  // H = -mu+ mu- = z^2
  CHECK(std::abs(s.H().eval(cplx(3.0)) - cplx(9.0)) < 1e-14);
}

TEST_CASE("moduli space dimensions") {
  CHECK_THROWS_AS(moduli_dimension(0), std::invalid_argument);
  int expect[] = {0, 0, 4, 4, 8, 8, 12, 12};
  for (int n = 1; n <= 8; ++n) CHECK(moduli_dimension(n) == expect[n - 1]);
}
