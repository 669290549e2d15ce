#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "hitchin/poly.hpp"

using namespace hitchin;

namespace {
double root_residual(const Poly& p, const std::vector<cplx>& rs) {
  double worst = 0.0;
  for (const cplx& r : rs) worst = std::max(worst, std::abs(p.eval(r)));
  return worst;
}
}  // namespace

TEST_CASE("cubic roots of z^3 - 1") {
  Poly p({cplx(1.0), cplx(0.0), cplx(0.0), cplx(-1.0)});
  auto r = roots(p);
  REQUIRE(r.size() == 3);
  const double s3 = std::sqrt(3.0) / 2.0;
  CHECK(std::abs(r[0] - cplx(-0.5, -s3)) < 1e-12);
  CHECK(std::abs(r[1] - cplx(-0.5, s3)) < 1e-12);
  CHECK(std::abs(r[2] - cplx(1.0, 0.0)) < 1e-12);
}

TEST_CASE("double root at the a=3 degenerate locus") {
  // z^3 + 3z + 2i has a double root at -i and a simple root at 2i
  Cubic c(3.0, cplx(0.0, -2.0));
  auto r = roots(c.to_poly());
  REQUIRE(r.size() == 3);
  CHECK(std::abs(r[0] - cplx(0.0, -1.0)) < 1e-6);
  CHECK(std::abs(r[1] - cplx(0.0, -1.0)) < 1e-6);
  CHECK(std::abs(r[2] - cplx(0.0, 2.0)) < 1e-10);
  CHECK(root_residual(c.to_poly(), r) < 1e-10);
}

TEST_CASE("random cubics satisfy Vieta and evaluate to zero") {
  std::mt19937 rng(1234u);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int t = 0; t < 200; ++t) {
    cplx b(u(rng), u(rng)), c(u(rng), u(rng)), d(u(rng), u(rng));
    Poly p({cplx(1.0), b, c, d});
    auto r = roots(p);
    REQUIRE(r.size() == 3);
    CHECK(std::abs(r[0] + r[1] + r[2] + b) < 1e-9);
    CHECK(std::abs(r[0] * r[1] * r[2] + d) < 1e-9);
    CHECK(root_residual(p, r) < 1e-9);
  }
}

TEST_CASE("linear and quadratic degrees") {
  auto r1 = roots(Poly({cplx(2.0), cplx(-4.0)}));
  REQUIRE(r1.size() == 1);
  CHECK(std::abs(r1[0] - 2.0) < 1e-14);

  auto r2 = roots(Poly({cplx(1.0), cplx(0.0), cplx(1.0)}));  // z^2 + 1
  REQUIRE(r2.size() == 2);
  CHECK(std::abs(r2[0] - cplx(0.0, -1.0)) < 1e-14);
  CHECK(std::abs(r2[1] - cplx(0.0, 1.0)) < 1e-14);
}

TEST_CASE("cancellation-prone quadratic keeps both roots accurate") {
  // z^2 - (1e8 + 1e-8) z + 1: roots 1e8 and 1e-8
  Poly p({cplx(1.0), cplx(-1e8 - 1e-8), cplx(1.0)});
  auto r = roots(p);
  CHECK(std::abs(r[0] - 1e-8) / 1e-8 < 1e-12);
  CHECK(std::abs(r[1] - 1e8) / 1e8 < 1e-12);
}

TEST_CASE("degree four via simultaneous iteration") {
  Poly p({cplx(1.0), cplx(0.0), cplx(0.0), cplx(0.0), cplx(-1.0)});  // z^4 - 1
  auto r = roots(p);
  REQUIRE(r.size() == 4);
  CHECK(root_residual(p, r) < 1e-10);
  CHECK(std::abs(r[0] - cplx(-1.0, 0.0)) < 1e-10);
  CHECK(std::abs(r[3] - cplx(1.0, 0.0)) < 1e-10);
}

TEST_CASE("eval, derivative, monic, product") {
  Poly p({cplx(2.0), cplx(0.0), cplx(-6.0), cplx(4.0)});  // 2z^3 - 6z + 4
  CHECK(std::abs(p.eval(cplx(2.0)) - cplx(8.0)) < 1e-14);
  Poly d = p.derivative();  // 6z^2 - 6
  CHECK(std::abs(d.eval(cplx(2.0)) - cplx(18.0)) < 1e-14);
  Poly m = p.monic();
  CHECK(m.c[0] == cplx(1.0));
  CHECK(std::abs(m.eval(cplx(2.0)) - cplx(4.0)) < 1e-14);
  Poly q = Poly({cplx(1.0), cplx(-1.0)}) * Poly({cplx(1.0), cplx(1.0)});
  CHECK(std::abs(q.eval(cplx(3.0)) - cplx(8.0)) < 1e-14);  // (z-1)(z+1) at 3
}

TEST_CASE("max_root_radius and input validation") {
  Cubic c(3.0, cplx(0.0, 2.0));  // roots i, i, -2i
  CHECK(max_root_radius(c.to_poly()) == doctest::Approx(2.0).epsilon(1e-8));
  CHECK_THROWS_AS((void)roots(Poly({cplx(1.0)})), std::invalid_argument);
  CHECK_THROWS_AS(Poly(std::vector<cplx>{}), std::invalid_argument);
  CHECK_THROWS_AS(Cubic(-1.0, cplx(0.0)), std::invalid_argument);
}
