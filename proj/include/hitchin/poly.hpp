#pragma once
#include <complex>
#include <stdexcept>
#include <vector>

namespace hitchin {

using cplx = std::complex<double>;

// Polynomial in z, coefficients highest degree first.
struct Poly {
  std::vector<cplx> c;

  Poly() = default;
  explicit Poly(std::vector<cplx> coeffs) : c(std::move(coeffs)) {
    if (c.empty()) throw std::invalid_argument("Poly: empty coefficient list");
  }

  int degree() const { return static_cast<int>(c.size()) - 1; }

  cplx eval(cplx z) const {
    cplx v = c[0];
    for (std::size_t i = 1; i < c.size(); ++i) v = v * z + c[i];
    return v;
  }

  Poly derivative() const {
    int n = degree();
    if (n == 0) return Poly({cplx(0.0)});
    std::vector<cplx> d(n);
    for (int i = 0; i < n; ++i) d[i] = c[i] * double(n - i);
    return Poly(std::move(d));
  }

  // Leading coefficient scaled to exactly 1+0i.
  Poly monic() const {
    std::vector<cplx> m(c);
    cplx lead = m[0];
    if (std::abs(lead) == 0.0) throw std::invalid_argument("Poly: zero leading coefficient");
    m[0] = cplx(1.0);
    for (std::size_t i = 1; i < m.size(); ++i) m[i] /= lead;
    return Poly(std::move(m));
  }

  Poly operator*(const Poly& o) const {
    std::vector<cplx> p(c.size() + o.c.size() - 1, cplx(0.0));
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t j = 0; j < o.c.size(); ++j) p[i + j] += c[i] * o.c[j];
    return Poly(std::move(p));
  }

  Poly operator*(cplx s) const {
    std::vector<cplx> p(c);
    for (auto& v : p) v *= s;
    return Poly(std::move(p));
  }
};

// H(z) = z^3 + a z - K, the cubic family of the n=3 surfaces.
struct Cubic {
  double a;
  cplx K;

  Cubic(double a_, cplx K_) : a(a_), K(K_) {
    if (a < 0.0) throw std::invalid_argument("Cubic: a must be >= 0");
  }
  Poly to_poly() const { return Poly({cplx(1.0), cplx(0.0), cplx(a), -K}); }
  cplx eval(cplx z) const { return (z * z + a) * z - K; }
};

// Roots sorted lexicographically by (real, imaginary) part. Degrees 1..3
// are closed form; the cubic uses Cardano with the cube root taken of the
// larger-magnitude branch and the remaining quadratic deflated with a
// sign-stable square root, so double roots (the curvature-peak loci) keep
// full accuracy. Degree >= 4 falls back to a simultaneous (Weierstrass)
// iteration, sufficient for simple-root inputs.
std::vector<cplx> roots(const Poly& p);

double max_root_radius(const Poly& p);

}  // namespace hitchin
