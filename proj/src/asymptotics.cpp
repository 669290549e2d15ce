#include "hitchin/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hitchin/quadrature.hpp"

namespace hitchin {
namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

}  // namespace

double wrap_angle(double x) {
  double y = std::fmod(x + kPi, 2.0 * kPi);
  if (y <= 0.0) y += 2.0 * kPi;
  return y - kPi;
}

double constant_c_integral_1d() {
  // u = 1 - s^2 turns (1 - u^3)^{-1/2} into 2 / sqrt(3 - 3 s^2 + s^4)
  auto f = [](double s) { return 2.0 / std::sqrt(3.0 - 3.0 * s * s + s * s * s * s); };
  return adaptive_simpson(f, 0.0, 1.0, 1e-14);
}

double constant_c() {
  static const double c = [] {
    double I = constant_c_integral_1d();
    return 0.75 * std::sqrt(3.0) * I * I;
  }();
  return c;
}

namespace {

// one evaluation of the 2D route at a given adaptive tolerance
double c2d_pass(double tol) {
  const double rho0 = 0.5;
  const double r_out = 8.0;
  const double inner_tol = tol * 0.1;

  // disk about w = 1: |w^3 - 1| = rho |w^2 + w + 1| cancels the singularity;
  // radial grading rho = rho0 u^2 clusters nodes at the root
  auto disk_inner = [&](double phi) {
    auto f = [&](double u) {
      const double rho = rho0 * u * u;
      const cplx w = 1.0 + std::polar(rho, phi);
      return 0.25 * (2.0 * rho0 * u) / std::abs(w * w + w + 1.0);
    };
    return adaptive_simpson(f, 0.0, 1.0, inner_tol);
  };
  const double disk = adaptive_simpson(disk_inner, 0.0, 2.0 * kPi, tol);

  // sector |arg w| <= pi/3, r <= r_out, minus the disk; rays crossing the
  // disk split into two radial segments
  auto ray = [&](double th) {
    const cplx e3 = std::polar(1.0, 3.0 * th);
    auto g = [&](double r) { return 0.25 * r / std::abs(r * r * r * e3 - 1.0); };
    const double s = std::sin(th);
    if (std::abs(s) < rho0) {
      const double half = std::sqrt(rho0 * rho0 - s * s);
      const double c0 = std::cos(th);
      return adaptive_simpson(g, 0.0, c0 - half, inner_tol) +
             adaptive_simpson(g, c0 + half, r_out, inner_tol);
    }
    return adaptive_simpson(g, 0.0, r_out, inner_tol);
  };
  const double th0 = std::asin(rho0);
  const double sector = adaptive_simpson(ray, -kPi / 3.0, -th0, tol) +
                        adaptive_simpson(ray, -th0, th0, tol) +
                        adaptive_simpson(ray, th0, kPi / 3.0, tol);

  // beyond r_out, t = 1/r gives a smooth integrand on [0, 1/r_out]
  auto tail_inner = [&](double th) {
    const cplx e3 = std::polar(1.0, 3.0 * th);
    auto f = [&](double t) { return 0.25 / std::abs(e3 - t * t * t); };
    return adaptive_simpson(f, 0.0, 1.0 / r_out, inner_tol);
  };
  const double tail = adaptive_simpson(tail_inner, 0.0, 2.0 * kPi, tol);

  return 3.0 * (disk + sector) + tail;
}

}  // namespace

double constant_c_2d() {
  double prev = c2d_pass(1e-5);
  for (double tol : {1e-6, 1e-7, 1e-8}) {
    double cur = c2d_pass(tol);
    if (std::abs(cur - prev) <= 1e-5) return cur;
    prev = cur;
  }
  throw std::runtime_error("constant_c_2d: refinement did not self-validate to 1e-5");
}

double eta_form(double d1, double d2) {
  return (d1 * d1 + d2 * d2 - d1 * d2) / std::sqrt(3.0);
}

double singular_metric(const AsymptoticChart& chart, cplx dK, double deta1,
                       double deta2) {
  const double r = std::abs(chart.K);
  if (r == 0.0)
    throw std::domain_error("singular_metric: conical point K = 0");
  return constant_c() * std::pow(r, -1.0 / 3.0) * std::norm(dK) +
         eta_form(deta1, deta2);
}

AsymptoticChart upsilon(const AsymptoticChart& chart) {
  AsymptoticChart out;
  out.K = chart.K;
  out.eta1 = wrap_angle(-chart.eta2);
  out.eta2 = wrap_angle(chart.eta1 - chart.eta2);
  return out;
}

namespace {

// truncated integral of |z|^{2(n-k)} / (4|H|) over |z| <= R, with the
// 1/|z - z_j| singular parts subtracted under a hat cutoff and re-added in
// closed form (integral of g_j (1 - |u|/rho0)/|u| over the hat disk equals
// pi g_j rho0)
double norm_pk_truncated(int n, int k, const Poly& H, const std::vector<cplx>& zs,
                         double R) {
  const Poly dH = H.derivative();
  const double rho0 = 0.5;
  std::vector<double> gj(zs.size());
  double hats = 0.0;
  for (size_t j = 0; j < zs.size(); ++j) {
    gj[j] = std::pow(std::abs(zs[j]), 2.0 * (n - k)) / (4.0 * std::abs(dH.eval(zs[j])));
    hats += kPi * gj[j] * rho0;
  }

  const int cells = 1200;
  const double h = 2.0 * R / cells;
  const double R2 = R * R;
  double sum = 0.0;
  for (int i = 0; i < cells; ++i) {
    const double x = -R + h * (i + 0.5);
    for (int jj = 0; jj < cells; ++jj) {
      const double y = -R + h * (jj + 0.5);
      if (x * x + y * y > R2) continue;
      const cplx z(x, y);
      double f = std::pow(std::abs(z), 2.0 * (n - k)) / (4.0 * std::abs(H.eval(z)));
      bool degenerate_cell = false;
      for (size_t j = 0; j < zs.size(); ++j) {
        const double d = std::abs(z - zs[j]);
        if (d < 1e-9) { degenerate_cell = true; break; }
        if (d < rho0) f -= gj[j] * (1.0 - d / rho0) / d;
      }
      if (!degenerate_cell) sum += f;
    }
  }
  return sum * h * h + hats;
}

}  // namespace

NormPk norm_pk(int n, int k, const Poly& H, double R_cut) {
  if (H.degree() != n)
    throw std::invalid_argument("norm_pk: H degree does not match n");
  if (k < 1 || k > n)
    throw std::invalid_argument("norm_pk: k out of range");
  if (R_cut < 10.0)
    throw std::invalid_argument("norm_pk: R_cut must be >= 10");

  const std::vector<cplx> zs = roots(H);
  double scale = 1.0;
  for (const cplx& z : zs) scale = std::max(scale, std::abs(z));
  for (size_t i = 0; i < zs.size(); ++i) {
    if (std::abs(zs[i]) > 0.5 * R_cut - 2.0)
      throw std::invalid_argument("norm_pk: root too close to the cut radius");
    for (size_t j = i + 1; j < zs.size(); ++j)
      if (std::abs(zs[i] - zs[j]) < 1e-8 * scale)
        throw std::invalid_argument("norm_pk: H has a double root");
  }

  NormPk out;
  const bool conv = (2 * k >= n + 3) && (k <= n);
  out.cls = conv ? NormClass::Converges : NormClass::Diverges;

  if (conv) {
    // far field: |H| ~ |c0| r^n, so the tail integrates to
    // pi R^{-(2k-n-2)} / (2 |c0| (2k-n-2))
    const int e = 2 * k - n - 2;
    const double lead = std::abs(H.c[0]);
    out.value = norm_pk_truncated(n, k, H, zs, R_cut) +
                kPi * std::pow(R_cut, -double(e)) / (2.0 * lead * e);
  } else {
    const double lo = norm_pk_truncated(n, k, H, zs, R_cut / 2.0);
    const double hi = norm_pk_truncated(n, k, H, zs, R_cut);
    out.value = hi;
    out.growth_rate = (std::log(hi) - std::log(lo)) / std::log(2.0);
  }
  return out;
}

double singular_flux(int n) {
  if (n < 1) throw std::invalid_argument("singular_flux: n must be >= 1");
  return n * kPi / 2.0;
}

}  // namespace hitchin
