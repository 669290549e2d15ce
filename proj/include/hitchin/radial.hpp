#pragma once
#include <stdexcept>
#include <vector>

#include "hitchin/errors.hpp"

namespace hitchin {

// Rotationally-symmetric psi(r) on [0, R]:
//   psi'' + psi'/r = 2 [1 + 4 B^2 / M^2] (r^{2n} e^psi - e^-psi),
//   M = r^2 e^{psi/2} + e^{-psi/2}   (the B term exists only for n=2),
// with psi'(0) = 0 and psi(R) = -n log R.
struct RadialProfile {
  int n = 1;
  double B = 0.0;
  double R = 20.0;
  std::vector<double> r;
  std::vector<double> psi;
  bool converged = false;
  double residual_sup = 0.0;  // scaled sup norm, see radial_residual_scaled
  int newton_iters = 0;
};

RadialProfile solve_radial(int n, double B, double R, int num_points,
                           const RadialProfile* warm = nullptr);

// Residual of the collocation equations scaled per row by the diagonal
// stiffness 1 + 2(1+4B^2/M^2)(r^{2n} e^psi + e^-psi), so convergence is
// measured uniformly in B.
double radial_residual_scaled(const RadialProfile& p);

// 2 pi * int_0^R |F| r dr, |F| = 1/2 |r^{2n} e^psi - e^-psi|, composite
// Simpson (num_points is kept odd-sampled by construction).
double flux(const RadialProfile& p);

std::vector<double> dpsi_dr(const RadialProfile& p);
std::vector<double> absF(const RadialProfile& p);

// Painleve-III residual of h(t) = e^{-psi/2} t^{-1/3}, t = r^{3/2}:
//   h'' - h'^2/h + h'/t + 4/(9h) - 4 h^3/9,
// sup over the window r in [r_lo, r_hi] on the nonuniform t-grid.
double painleve_residual(const RadialProfile& p, double r_lo = 1.0, double r_hi = 0.0);
double painleve_h_end(const RadialProfile& p);

std::vector<std::pair<double, double>> scan_B(const std::vector<double>& B_values, double R,
                                              int num_points);

}  // namespace hitchin
