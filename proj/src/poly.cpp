#include "hitchin/poly.hpp"

#include <algorithm>
#include <cmath>

namespace hitchin {

namespace {

bool lex_less(const cplx& u, const cplx& v) {
  if (u.real() != v.real()) return u.real() < v.real();
  return u.imag() < v.imag();
}

std::vector<cplx> quadratic_roots(cplx b, cplx c) {
  // z^2 + b z + c; the sign of the discriminant root is chosen so that
  // -b and s do not cancel.
  cplx s = std::sqrt(b * b - 4.0 * c);
  if ((std::conj(-b) * s).real() < 0.0) s = -s;
  cplx z1 = 0.5 * (-b + s);
  cplx z2 = (std::abs(z1) > 0.0) ? c / z1 : 0.5 * (-b - s);
  return {z1, z2};
}

std::vector<cplx> cubic_roots(cplx b, cplx c, cplx d) {
  // z^3 + b z^2 + c z + d, depressed by z = t - b/3.
  cplx shift = b / 3.0;
  cplx p = c - b * b / 3.0;
  cplx q = d - b * c / 3.0 + 2.0 * b * b * b / 27.0;
  // t^3 + p t + q = 0; Cardano: t = u - p/(3u), u^3 the larger root of
  // w^2 + q w - p^3/27.
  cplx half_q = 0.5 * q;
  cplx disc = std::sqrt(half_q * half_q + p * p * p / 27.0);
  cplx u3 = -half_q + disc;
  cplx u3b = -half_q - disc;
  if (std::abs(u3b) > std::abs(u3)) u3 = u3b;

  cplx t1;
  if (std::abs(u3) == 0.0) {
    t1 = 0.0;  // triple root of the depressed cubic
  } else {
    cplx u = std::pow(u3, 1.0 / 3.0);
    // pick the cube-root branch minimizing |t|^3 residual directly
    cplx best = u;
    double best_res = 1e300;
    const cplx w(-0.5, std::sqrt(3.0) / 2.0);
    cplx cand = u;
    for (int k = 0; k < 3; ++k) {
      cplx t = cand - p / (3.0 * cand);
      double res = std::abs(((t * t + p) * t + q));
      if (res < best_res) {
        best_res = res;
        best = cand;
      }
      cand *= w;
    }
    t1 = best - p / (3.0 * best);
  }
  cplx z1 = t1 - shift;

  // deflate: z^3 + b z^2 + c z + d = (z - z1)(z^2 + B z + C)
  cplx B = b + z1;
  cplx C = c + z1 * B;
  auto qr = quadratic_roots(B, C);
  return {z1, qr[0], qr[1]};
}

std::vector<cplx> simultaneous_roots(const Poly& m) {
  // Weierstrass iteration z_i <- z_i - p(z_i) / prod_{j != i}(z_i - z_j)
  // on a monic polynomial; adequate for the simple-root inputs of the
  // norm integrals.
  int n = m.degree();
  std::vector<cplx> z(n);
  double rad = 1.0;
  for (const auto& coef : m.c) rad = std::max(rad, std::abs(coef));
  const cplx seed = std::polar(1.0, 0.4);  // avoid symmetry-axis stalls
  for (int i = 0; i < n; ++i) z[i] = rad * std::pow(seed, double(i + 1));
  for (int iter = 0; iter < 500; ++iter) {
    double move = 0.0;
    for (int i = 0; i < n; ++i) {
      cplx denom = 1.0;
      for (int j = 0; j < n; ++j)
        if (j != i) denom *= (z[i] - z[j]);
      if (std::abs(denom) == 0.0) denom = 1e-30;
      cplx step = m.eval(z[i]) / denom;
      z[i] -= step;
      move = std::max(move, std::abs(step));
    }
    if (move < 1e-13 * rad) break;
  }
  return z;
}

}  // namespace

std::vector<cplx> roots(const Poly& p) {
  int n = p.degree();
  if (n < 1) throw std::invalid_argument("roots: degree must be >= 1");
  Poly m = p.monic();
  std::vector<cplx> r;
  if (n == 1) {
    r = {-m.c[1]};
  } else if (n == 2) {
    r = quadratic_roots(m.c[1], m.c[2]);
  } else if (n == 3) {
    r = cubic_roots(m.c[1], m.c[2], m.c[3]);
  } else {
    r = simultaneous_roots(m);
  }
  std::sort(r.begin(), r.end(), lex_less);
  return r;
}

double max_root_radius(const Poly& p) {
  double m = 0.0;
  for (const auto& z : roots(p)) m = std::max(m, std::abs(z));
  return m;
}

}  // namespace hitchin
