#pragma once
#include "hitchin/poly.hpp"

namespace hitchin {

// Splitting mu_plus * mu_minus = -H selecting a Gamma-invariant branch.
// SPlus: all lumps parallel, (H, -1). SMinus: the lump at z=W antiparallel,
// mu_minus = -(z - W), mu_plus = H/(z - W). Split: the degenerate (z, -z)
// pair with psi identically zero.
struct Factorization {
  enum class Sheet { SPlus, SMinus, Split };

  Poly mu_plus;
  Poly mu_minus;
  Sheet sheet;
  cplx W{0.0};  // odd-lump root, SMinus only

  int n() const { return mu_plus.degree() + mu_minus.degree(); }
  Poly H() const { return (mu_plus * mu_minus) * cplx(-1.0); }
  double max_root_radius() const;
};

Factorization factorize_splus(const Poly& H);
Factorization factorize_splus(const Cubic& H);
Factorization factorize_sminus(const Cubic& H, cplx W);
// K recovered from W on the S-minus triple cover: K = W^3 + a W.
Factorization sminus_at(double a, cplx W);
Factorization degenerate_split();

// The unique psi balancing the two exponential terms at z; the Dirichlet
// boundary data of the 2D solves.
double boundary_psi(const Factorization& fac, cplx z);

// Scalar |F| = 1/2 | |mu+|^2 e^psi - |mu-|^2 e^-psi |, normalized so the
// total flux of a converged field is n*pi/2.
double gauge_field_magnitude(const Factorization& fac, cplx z, double psi);

// Real dimension of the L^2 moduli space: 2(n-1) for odd n, 2(n-2) even.
int moduli_dimension(int n);

}  // namespace hitchin
