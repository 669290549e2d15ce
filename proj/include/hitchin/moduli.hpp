#pragma once
#include <optional>
#include <vector>

#include "hitchin/tangent.hpp"

namespace hitchin {

enum class SheetKind { SPlus, SMinus };

// One point of a geodesic surface: coordinate K (SPlus) or W (SMinus),
// conformal factor omega, Gaussian curvature (filled by curvature_grid),
// the delta vs i*delta displacement spread, and the gauge-orthogonality
// residual of the second perturbation equation relative to sup|Phi_dot|.
struct MetricSample {
  cplx coord;
  double omega = 0.0;
  double curvature = std::numeric_limits<double>::quiet_NaN();
  double iso_spread = 0.0;
  double resid_gauge = 0.0;
  bool ok = false;
};

// integral of the tangent density beyond the solve square: the projected
// density approaches 1/(4 |z^3 + a z - K|), whose truncation at [-L, L]^2
// loses ~ sqrt(2)/L; evaluated by polar quadrature of the exact cubic
double exterior_tail(double a, cplx K, double L);

struct WarmState {
  std::optional<Field2D> center;
  std::vector<Mat2> eps_re, eps_im;
};

struct OmegaOpts {
  double delta = 0.02;
  GridSpec spec{10.0, 257};
  ProjectionOpts proj{};
  EllipticOpts solver{};
};

MetricSample omega_at(double a, cplx coord, SheetKind sheet, const OmegaOpts& opts,
                      WarmState* warm = nullptr);

// C = -(1/2 Omega) Lap log Omega by the 5-point stencil in the chart
// coordinate; samples laid out row-major (re index outer) on a uniform
// steps x steps grid with the given spacing
void curvature_grid(std::vector<MetricSample>& samples, int steps, double spacing);

struct ScanSummary {
  std::vector<cplx> peaks;  // strict local maxima with C >= max(0, C_max/2)
  double c_min = 0.0, c_max = 0.0;
  cplx at_c_min, at_c_max;
  int failures = 0;
};

struct ScanResult {
  int steps = 0;
  double spacing = 0.0;
  std::vector<MetricSample> samples;  // row-major over (re, im)
  ScanSummary summary;
};

// extremal curvatures and strict 8-neighbour local maxima (interior, ok
// samples only, curvature at least half the maximum and positive)
ScanSummary summarize_samples(const std::vector<MetricSample>& samples, int steps,
                              int failures = 0);

// serpentine warm-started sweep over the square coordinate grid
// [-radius, radius]^2; jobs > 1 splits the rows into contiguous strips each
// owning its own continuation chain
ScanResult surface_scan(double a, SheetKind sheet, double radius, int steps,
                        const OmegaOpts& opts, int jobs = 1);

}  // namespace hitchin
