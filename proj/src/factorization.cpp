#include "hitchin/factorization.hpp"

#include <cmath>

namespace hitchin {

double Factorization::max_root_radius() const {
  double m = 0.0;
  if (mu_plus.degree() >= 1) m = std::max(m, hitchin::max_root_radius(mu_plus));
  if (mu_minus.degree() >= 1) m = std::max(m, hitchin::max_root_radius(mu_minus));
  return m;
}

Factorization factorize_splus(const Poly& H) {
  int n = H.degree();
  if (n < 1 || n > 3) throw std::invalid_argument("factorize: degree must be 1, 2 or 3");
  Factorization f;
  f.mu_plus = H.monic();
  f.mu_minus = Poly({cplx(-1.0)});
  f.sheet = Factorization::Sheet::SPlus;
  return f;
}

Factorization factorize_splus(const Cubic& H) { return factorize_splus(H.to_poly()); }

Factorization factorize_sminus(const Cubic& H, cplx W) {
  if (std::abs(H.eval(W)) > 1e-10 * (1.0 + std::abs(H.K)))
    throw std::invalid_argument("factorize: W is not a root of H (invalid sheet)");
  Factorization f;
  // H/(z - W) by synthetic division: z^2 + W z + (W^2 + a)
  f.mu_plus = Poly({cplx(1.0), W, W * W + H.a});
  f.mu_minus = Poly({cplx(-1.0), W});
  f.sheet = Factorization::Sheet::SMinus;
  f.W = W;
  return f;
}

Factorization sminus_at(double a, cplx W) {
  return factorize_sminus(Cubic(a, (W * W + a) * W), W);
}

Factorization degenerate_split() {
  Factorization f;
  f.mu_plus = Poly({cplx(1.0), cplx(0.0)});
  f.mu_minus = Poly({cplx(-1.0), cplx(0.0)});
  f.sheet = Factorization::Sheet::Split;
  return f;
}

double boundary_psi(const Factorization& fac, cplx z) {
  double ap = std::abs(fac.mu_plus.eval(z));
  double am = std::abs(fac.mu_minus.eval(z));
  if (ap == 0.0 || am == 0.0)
    throw std::domain_error("boundary_psi: evaluation at a zero of mu+ or mu-");
  return std::log(am / ap);
}

double gauge_field_magnitude(const Factorization& fac, cplx z, double psi) {
  double ap = std::abs(fac.mu_plus.eval(z));
  double am = std::abs(fac.mu_minus.eval(z));
  return 0.5 * std::abs(ap * ap * std::exp(psi) - am * am * std::exp(-psi));
}

int moduli_dimension(int n) {
  if (n < 1) throw std::invalid_argument("moduli_dimension: n must be >= 1");
  return (n % 2 == 1) ? 2 * (n - 1) : 2 * (n - 2);
}

}  // namespace hitchin
