#include "hitchin/radial.hpp"

#include <cmath>
#include <string>

#include "hitchin/quadrature.hpp"

namespace hitchin {

namespace {

struct Rhs {
  int n;
  double B2x4;  // 4 B^2

  // value and d/dpsi of 2 [1 + 4B^2/M^2] (r^{2n} e^psi - e^-psi)
  void eval(double r, double psi, double& f, double& df) const {
    double rp = std::pow(r, 2 * n);
    double ep = std::exp(psi), em = std::exp(-psi);
    double g = rp * ep - em;
    double dg = rp * ep + em;
    if (B2x4 == 0.0) {
      f = 2.0 * g;
      df = 2.0 * dg;
      return;
    }
    double M = r * r * std::exp(0.5 * psi) + std::exp(-0.5 * psi);
    double dM = 0.5 * (r * r * std::exp(0.5 * psi) - std::exp(-0.5 * psi));
    double w = 1.0 + B2x4 / (M * M);
    double dw = -2.0 * B2x4 / (M * M * M) * dM;
    f = 2.0 * (w * g);
    df = 2.0 * (w * dg + dw * g);
  }

  double diag_scale(double r, double psi) const {
    double rp = std::pow(r, 2 * n);
    double dg = rp * std::exp(psi) + std::exp(-psi);
    double w = 1.0;
    if (B2x4 != 0.0) {
      double M = r * r * std::exp(0.5 * psi) + std::exp(-0.5 * psi);
      w = 1.0 + B2x4 / (M * M);
    }
    return 1.0 + 2.0 * w * dg;
  }
};

// residual of the collocation system; interior rows use the 3-point radial
// Laplacian, row 0 the L'Hopital doubling 4(psi1-psi0)/dr^2 = RHS(0)
void residuals(const RadialProfile& p, const Rhs& rhs, std::vector<double>& res) {
  std::size_t m = p.r.size();
  double dr = p.r[1] - p.r[0];
  double f, df;
  res.resize(m - 1);
  rhs.eval(0.0, p.psi[0], f, df);
  res[0] = 4.0 * (p.psi[1] - p.psi[0]) / (dr * dr) - f;
  for (std::size_t i = 1; i + 1 < m; ++i) {
    rhs.eval(p.r[i], p.psi[i], f, df);
    double lap = (p.psi[i + 1] - 2.0 * p.psi[i] + p.psi[i - 1]) / (dr * dr) +
                 (p.psi[i + 1] - p.psi[i - 1]) / (2.0 * p.r[i] * dr);
    res[i] = lap - f;
  }
}

double scaled_sup(const RadialProfile& p, const Rhs& rhs, const std::vector<double>& res) {
  double s = 0.0;
  for (std::size_t i = 0; i < res.size(); ++i)
    s = std::max(s, std::abs(res[i]) / rhs.diag_scale(p.r[i], p.psi[i]));
  return s;
}

// Thomas solve of the tridiagonal Newton system; lo/di/up overwritten.
void thomas(std::vector<double>& lo, std::vector<double>& di, std::vector<double>& up,
            std::vector<double>& b) {
  std::size_t m = di.size();
  for (std::size_t i = 1; i < m; ++i) {
    double w = lo[i] / di[i - 1];
    di[i] -= w * up[i - 1];
    b[i] -= w * b[i - 1];
  }
  b[m - 1] /= di[m - 1];
  for (std::size_t i = m - 1; i-- > 0;) b[i] = (b[i] - up[i] * b[i + 1]) / di[i];
}

double integrate_samples(const std::vector<double>& y, double h) {
  // composite Simpson; odd interval counts get a 3/8 closure on the tail
  std::size_t m = y.size();
  if (m % 2 == 1) return composite_simpson(y, h);
  std::vector<double> head(y.begin(), y.end() - 3);
  double s = composite_simpson(head, h);
  std::size_t k = m - 4;
  s += 3.0 * h / 8.0 * (y[k] + 3.0 * y[k + 1] + 3.0 * y[k + 2] + y[k + 3]);
  return s;
}

}  // namespace

RadialProfile solve_radial(int n, double B, double R, int num_points,
                           const RadialProfile* warm) {
  if (n != 1 && n != 2) throw std::invalid_argument("solve_radial: n must be 1 or 2");
  if (n == 1 && B != 0.0)
    throw std::invalid_argument("solve_radial: B must be 0 for n=1 (Gamma invariance)");
  if (B < 0.0) throw std::invalid_argument("solve_radial: B must be >= 0");
  if (R < 10.0) throw std::invalid_argument("solve_radial: R must be >= 10");
  if (num_points < 400) throw std::invalid_argument("solve_radial: need >= 400 points");

  RadialProfile p;
  p.n = n;
  p.B = B;
  p.R = R;
  std::size_t m = static_cast<std::size_t>(num_points);
  double dr = R / double(m - 1);
  p.r.resize(m);
  p.psi.resize(m);
  for (std::size_t i = 0; i < m; ++i) p.r[i] = dr * double(i);
  if (warm && warm->r.size() == m && warm->R == R && warm->n == n) {
    p.psi = warm->psi;
  } else {
    for (std::size_t i = 0; i < m; ++i)
      p.psi[i] = -0.5 * n * std::log(p.r[i] * p.r[i] + 1.0);
  }
  p.psi[m - 1] = -double(n) * std::log(R);

  Rhs rhs{n, 4.0 * B * B};
  std::vector<double> res, lo(m - 1), di(m - 1), up(m - 1), step;
  residuals(p, rhs, res);
  double err = scaled_sup(p, rhs, res);
  const double tol = 1e-10;
  const int max_newton = 60;

  for (int it = 0; it < max_newton && err > tol; ++it) {
    // Newton system J d = -res on rows 0..m-2 (row m-1 is Dirichlet)
    double f, df;
    rhs.eval(0.0, p.psi[0], f, df);
    lo[0] = 0.0;
    di[0] = -4.0 / (dr * dr) - df;
    up[0] = 4.0 / (dr * dr);
    for (std::size_t i = 1; i + 1 < m; ++i) {
      rhs.eval(p.r[i], p.psi[i], f, df);
      lo[i] = 1.0 / (dr * dr) - 1.0 / (2.0 * p.r[i] * dr);
      di[i] = -2.0 / (dr * dr) - df;
      up[i] = 1.0 / (dr * dr) + 1.0 / (2.0 * p.r[i] * dr);
    }
    up[m - 2] = 0.0;  // psi[m-1] fixed
    step = res;
    for (auto& v : step) v = -v;
    thomas(lo, di, up, step);

    double lambda = 1.0;
    std::vector<double> save = p.psi;
    for (int halve = 0; halve <= 30; ++halve) {
      for (std::size_t i = 0; i + 1 < m; ++i) p.psi[i] = save[i] + lambda * step[i];
      residuals(p, rhs, res);
      double trial = scaled_sup(p, rhs, res);
      if (trial < err || halve == 30) {
        err = trial;
        break;
      }
      lambda *= 0.5;
    }
    p.newton_iters = it + 1;
  }

  p.residual_sup = err;
  p.converged = err <= tol;
  if (!p.converged)
    throw NonConvergence("solve_radial: Newton stalled at scaled residual " +
                             std::to_string(err),
                         err);
  return p;
}

double radial_residual_scaled(const RadialProfile& p) {
  Rhs rhs{p.n, 4.0 * p.B * p.B};
  std::vector<double> res;
  residuals(p, rhs, res);
  return scaled_sup(p, rhs, res);
}

std::vector<double> absF(const RadialProfile& p) {
  std::size_t m = p.r.size();
  std::vector<double> v(m);
  for (std::size_t i = 0; i < m; ++i) {
    double rp = std::pow(p.r[i], 2 * p.n);
    v[i] = 0.5 * std::abs(rp * std::exp(p.psi[i]) - std::exp(-p.psi[i]));
  }
  return v;
}

double flux(const RadialProfile& p) {
  if (!p.converged) throw std::logic_error("flux: profile not converged");
  std::vector<double> y = absF(p);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] *= p.r[i];
  double dr = p.r[1] - p.r[0];
  return 2.0 * M_PI * integrate_samples(y, dr);
}

std::vector<double> dpsi_dr(const RadialProfile& p) {
  std::size_t m = p.r.size();
  double dr = p.r[1] - p.r[0];
  std::vector<double> d(m);
  d[0] = 0.0;
  for (std::size_t i = 1; i + 1 < m; ++i) d[i] = (p.psi[i + 1] - p.psi[i - 1]) / (2.0 * dr);
  d[m - 1] = (3.0 * p.psi[m - 1] - 4.0 * p.psi[m - 2] + p.psi[m - 3]) / (2.0 * dr);
  return d;
}

namespace {

void painleve_window(const RadialProfile& p, double r_lo, double r_hi, std::size_t& i0,
                     std::size_t& i1, std::vector<double>& t, std::vector<double>& h) {
  if (p.n != 1) throw std::invalid_argument("painleve: defined for n=1 only");
  if (r_hi <= 0.0) r_hi = 0.9 * p.R;
  std::size_t m = p.r.size();
  t.resize(m);
  h.resize(m);
  for (std::size_t i = 1; i < m; ++i) {
    t[i] = std::pow(p.r[i], 1.5);
    h[i] = std::exp(-0.5 * p.psi[i]) / std::sqrt(p.r[i]);
  }
  i0 = 1;
  while (i0 < m && p.r[i0] < r_lo) ++i0;
  i1 = m - 1;
  while (i1 > 0 && p.r[i1] > r_hi) --i1;
  if (i0 + 2 > i1) throw std::invalid_argument("painleve: window too small");
}

}  // namespace

double painleve_residual(const RadialProfile& p, double r_lo, double r_hi) {
  std::size_t i0, i1;
  std::vector<double> t, h;
  painleve_window(p, r_lo, r_hi, i0, i1, t, h);
  double sup = 0.0;
  for (std::size_t i = i0; i <= i1; ++i) {
    double dm = t[i] - t[i - 1], dp = t[i + 1] - t[i];
    double hpp = 2.0 * (h[i - 1] / (dm * (dm + dp)) - h[i] / (dm * dp) +
                        h[i + 1] / (dp * (dm + dp)));
    double hp = -dp / (dm * (dm + dp)) * h[i - 1] + (dp - dm) / (dm * dp) * h[i] +
                dm / (dp * (dm + dp)) * h[i + 1];
    double res = hpp - hp * hp / h[i] + hp / t[i] + 4.0 / (9.0 * h[i]) -
                 4.0 * h[i] * h[i] * h[i] / 9.0;
    sup = std::max(sup, std::abs(res));
  }
  return sup;
}

double painleve_h_end(const RadialProfile& p) {
  // last interior node; the endpoint value is pinned to 1 by the Dirichlet
  // data and would be vacuous
  std::size_t m = p.r.size();
  return std::exp(-0.5 * p.psi[m - 2]) / std::sqrt(p.r[m - 2]);
}

std::vector<std::pair<double, double>> scan_B(const std::vector<double>& B_values, double R,
                                              int num_points) {
  if (B_values.empty() || B_values.front() != 0.0)
    throw std::invalid_argument("scan_B: values must be ascending from 0");
  for (std::size_t i = 1; i < B_values.size(); ++i)
    if (B_values[i] <= B_values[i - 1])
      throw std::invalid_argument("scan_B: values must be strictly ascending");
  std::vector<std::pair<double, double>> out;
  RadialProfile prev;
  for (std::size_t i = 0; i < B_values.size(); ++i) {
    RadialProfile p = solve_radial(2, B_values[i], R, num_points, i ? &prev : nullptr);
    out.emplace_back(B_values[i], flux(p) / M_PI);
    prev = std::move(p);
  }
  return out;
}

}  // namespace hitchin
