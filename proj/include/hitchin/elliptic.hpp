#pragma once
#include <vector>

#include "hitchin/errors.hpp"
#include "hitchin/factorization.hpp"
#include "hitchin/grid.hpp"

namespace hitchin {

// The alpha=0 elliptic problem on the truncated square:
//   Lap psi = 2 (|mu+|^2 e^psi - |mu-|^2 e^-psi),
// Dirichlet data boundary_psi on the edge.
struct Field2D {
  GridSpec spec;
  Factorization fac;
  std::vector<double> psi;
  double residual_sup = 0.0;
  int newton_iters = 0;
};

struct EllipticOpts {
  double tol = 1e-10;      // sup-norm residual target
  double cg_tol = 1e-12;   // relative CG tolerance per Newton step
  int max_newton = 50;
  int max_cg = 200000;
};

Field2D solve_psi(const Factorization& fac, const GridSpec& spec,
                  const Field2D* initial = nullptr, const EllipticOpts& opts = {});

// sup over interior nodes of |Lap_h psi - RHS(psi)|
double residual(const Field2D& f);

// Jacobian action: Lap_h d - 2(|mu+|^2 e^psi + |mu-|^2 e^-psi) d on interior
// nodes (zero Dirichlet); the operator is negative definite and CG runs on
// its negation.
std::vector<double> linearized_apply(const Field2D& f, const std::vector<double>& d);

// trapezoid integral of |F| over the grid; nominal value n*pi/2
double flux2d(const Field2D& f);

std::vector<double> absF_grid(const Field2D& f);

}  // namespace hitchin
