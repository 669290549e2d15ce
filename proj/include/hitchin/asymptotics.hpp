#pragma once
#include "hitchin/poly.hpp"

namespace hitchin {

// Large-|K| chart: the base coordinate K plus the two relative lump phases,
// kept wrapped to (-pi, pi] (ties map to pi).
struct AsymptoticChart {
  cplx K;
  double eta1 = 0.0;
  double eta2 = 0.0;
};

double wrap_angle(double x);

// I = integral_0^1 du / sqrt(1 - u^3); the endpoint singularity is removed
// by u = 1 - s^2
double constant_c_integral_1d();

// c = (3 sqrt(3) / 4) * I^2
double constant_c();

// independent route: (1/4) integral over R^2 of d^2 w / |w^3 - 1|,
// assembled from graded polar disks about the three roots, the sector
// complement, and a circular far-field quadrature; internally refined until
// two resolutions agree to 1e-5
double constant_c_2d();

// quadratic form (d1^2 + d2^2 - d1 d2) / sqrt(3)
double eta_form(double d1, double d2);

// ds^2 = c |K|^{-1/3} |dK|^2 + eta_form(deta1, deta2); |K| = 0 is the cone
// point and is rejected
double singular_metric(const AsymptoticChart& chart, cplx dK, double deta1,
                       double deta2);

// (eta1, eta2) -> (-eta2, eta1 - eta2), wrapped; cube root of the identity
AsymptoticChart upsilon(const AsymptoticChart& chart);

enum class NormClass { Converges, Diverges };

struct NormPk {
  NormClass cls;
  // convergent: quadrature over |z| <= R_cut plus the analytic far tail;
  // divergent: the truncated integral at R_cut
  double value = 0.0;
  // divergent only: d log(value) / d log(R) fitted between R_cut/2 and R_cut
  double growth_rate = 0.0;
};

// integral of |z|^{2(n-k)} / (4 |H|); converges iff (n+3)/2 <= k <= n.
// H must have simple zeros well inside the cut radius; R_cut >= 10.
NormPk norm_pk(int n, int k, const Poly& H, double R_cut);

// total gauge-field flux of the limiting configuration: n pi / 2
double singular_flux(int n);

}  // namespace hitchin
