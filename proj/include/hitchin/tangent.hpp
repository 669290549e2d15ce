#pragma once
#include <vector>

#include "hitchin/elliptic.hpp"
#include "hitchin/mat2.hpp"

namespace hitchin {

// psi-gauge matrices on the grid: Phi off-diagonal from (mu+-, psi), and
// A_zbar = -1/4 (dzbar psi) sigma3 + alpha Phi.
struct FieldMatrices {
  GridSpec spec;
  std::vector<Mat2> Phi;
  std::vector<Mat2> Az;  // A_zbar
};

FieldMatrices reconstruct_fields(const Field2D& f);
FieldMatrices reconstruct_fields(const Field2D& f, const std::vector<cplx>& alpha);

// Moduli deformation (Phi_dot, A_zbar_dot). Built as a central difference of
// reconstructed fields divided by the real displacement arclength |dK|: the
// perturbation equations and the gauge orbit are only real-linear, so the
// tangent is taken along the real direction dK/|dK| in the modulus plane.
struct TangentVector {
  GridSpec spec;
  std::vector<Mat2> phi_dot;
  std::vector<Mat2> a_dot;
};

TangentVector tangent_raw(const FieldMatrices& plus_half, const FieldMatrices& minus_half,
                          double delta_abs);

// ||V||^2 = sum rho (tr Phi_dot Phi_dot^dag + 4 tr A_dot A_dot^dag),
// rho = 1/2 h^2 trapezoid weight (the 1/2 of the L^2 form included).
double l2_norm_sq(const TangentVector& v);

struct ProjectionStats {
  int cg_iters = 0;
  double rel_residual = 0.0;   // CG normal-equation residual / initial
  double removed_norm_sq = 0.0;
};

struct ProjectionOpts {
  double cg_tol = 1e-10;
  int max_cg = 6000;
};

// Orthogonal projection of V against the gauge orbit directions
// L(eps) = ([Phi, eps], D_zbar eps), eps anti-Hermitian traceless with zero
// boundary values, by CG on the normal equations L^dag L eps = L^dag V in
// the L^2 inner product. eps_warm carries the minimizer across neighbouring
// samples when non-null.
ProjectionStats gauge_project(TangentVector& v, const FieldMatrices& base,
                              const ProjectionOpts& opts = {},
                              std::vector<Mat2>* eps_warm = nullptr);

// apply L to a given gauge parameter (testing and pure-gauge oracles)
TangentVector gauge_motion(const FieldMatrices& base, const std::vector<Mat2>& eps);

struct TangentCheck {
  double r1_sup = 0.0;        // first perturbation equation, O(dK^2 + h^2)
  double r2_su2_sup = 0.0;    // gauge-orthogonality channel, CG-controlled
  double r2_herm_sup = 0.0;   // linearized-curvature channel, O(dK^2 + h^2)
  double phi_dot_sup = 0.0;
};

// residuals of both perturbation equations on inner nodes, the second one
// split into its anti-Hermitian (gauge orthogonality) and Hermitian
// (linearized second Hitchin equation) channels
TangentCheck verify_tangent(const TangentVector& v, const FieldMatrices& base);

}  // namespace hitchin
