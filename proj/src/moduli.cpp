#include "hitchin/moduli.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace hitchin {
namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Simpson rule over [lo, hi] with n (even) intervals.
template <class F>
double simpson(F&& f, double lo, double hi, int n) {
  const double h = (hi - lo) / n;
  double acc = f(lo) + f(hi);
  for (int k = 1; k < n; ++k) acc += f(lo + k * h) * (k % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

cplx coord_to_K(double a, cplx coord, SheetKind sheet) {
  if (sheet == SheetKind::SPlus) return coord;
  return coord * coord * coord + a * coord;
}

Factorization make_factorization(double a, cplx coord, SheetKind sheet) {
  if (sheet == SheetKind::SPlus) return factorize_splus(Cubic{a, coord});
  return sminus_at(a, coord);
}

}  // namespace

double exterior_tail(double a, cplx K, double L) {
  // In polar form the density is dr dtheta / (4 r^2 |e^{3 i theta} +
  // a e^{i theta} r^{-2} - K r^{-3}|); the substitution t = 1/r maps each ray
  // to t in [0, max(|cos|, |sin|)/L] with a smooth integrand.
  auto inner = [&](double th) {
    const cplx e1 = std::polar(1.0, th);
    const cplx e3 = std::polar(1.0, 3.0 * th);
    const double tmax = std::max(std::abs(std::cos(th)), std::abs(std::sin(th))) / L;
    auto f = [&](double t) {
      return 0.25 / std::abs(e3 + a * e1 * (t * t) - K * (t * t * t));
    };
    return simpson(f, 0.0, tmax, 64);
  };
  // the breakpoints of max(|cos|, |sin|) sit at odd multiples of pi/4; octant
  // panels keep every panel smooth
  double total = 0.0;
  for (int oct = 0; oct < 8; ++oct)
    total += simpson(inner, oct * kPi / 4.0, (oct + 1) * kPi / 4.0, 64);
  return total;
}

MetricSample omega_at(double a, cplx coord, SheetKind sheet, const OmegaOpts& opts,
                      WarmState* warm) {
  const double d = opts.delta;
  if (!(d > 0.0)) throw std::invalid_argument("omega_at: delta must be positive");

  const Field2D* init = nullptr;
  if (warm && warm->center && warm->center->spec == opts.spec) init = &*warm->center;

  Field2D center =
      solve_psi(make_factorization(a, coord, sheet), opts.spec, init, opts.solver);

  const cplx h_re(d / 2.0, 0.0), h_im(0.0, d / 2.0);
  Field2D fp = solve_psi(make_factorization(a, coord + h_re, sheet), opts.spec,
                         &center, opts.solver);
  Field2D fm = solve_psi(make_factorization(a, coord - h_re, sheet), opts.spec,
                         &center, opts.solver);
  Field2D gp = solve_psi(make_factorization(a, coord + h_im, sheet), opts.spec,
                         &center, opts.solver);
  Field2D gm = solve_psi(make_factorization(a, coord - h_im, sheet), opts.spec,
                         &center, opts.solver);

  FieldMatrices base = reconstruct_fields(center);
  TangentVector v_re = tangent_raw(reconstruct_fields(fp), reconstruct_fields(fm), d);
  TangentVector v_im = tangent_raw(reconstruct_fields(gp), reconstruct_fields(gm), d);

  std::vector<Mat2>* warm_re = warm ? &warm->eps_re : nullptr;
  std::vector<Mat2>* warm_im = warm ? &warm->eps_im : nullptr;
  gauge_project(v_re, base, opts.proj, warm_re);
  gauge_project(v_im, base, opts.proj, warm_im);

  double tail = exterior_tail(a, coord_to_K(a, coord, sheet), opts.spec.L);
  if (sheet == SheetKind::SMinus) {
    // the tail density lives in the K chart; pulling back along K = W^3 + aW
    // scales it by |dK/dW|^2
    tail *= std::norm(3.0 * coord * coord + a);
  }

  const double om_re = l2_norm_sq(v_re) + tail;
  const double om_im = l2_norm_sq(v_im) + tail;

  MetricSample s;
  s.coord = coord;
  s.omega = 0.5 * (om_re + om_im);
  s.iso_spread = std::abs(om_re - om_im) / s.omega;

  TangentCheck chk = verify_tangent(v_re, base);
  s.resid_gauge = chk.r2_su2_sup / std::max(chk.phi_dot_sup, 1e-300);
  s.ok = true;

  if (warm) warm->center = std::move(center);
  return s;
}

void curvature_grid(std::vector<MetricSample>& samples, int steps, double spacing) {
  if ((int)samples.size() != steps * steps)
    throw std::invalid_argument("curvature_grid: size mismatch");
  auto at = [&](int ix, int iy) -> MetricSample& { return samples[ix * steps + iy]; };
  std::vector<double> curv(samples.size(), std::numeric_limits<double>::quiet_NaN());
  for (int ix = 1; ix + 1 < steps; ++ix)
    for (int iy = 1; iy + 1 < steps; ++iy) {
      const MetricSample& c = at(ix, iy);
      const MetricSample& xe = at(ix + 1, iy);
      const MetricSample& xw = at(ix - 1, iy);
      const MetricSample& yn = at(ix, iy + 1);
      const MetricSample& ys = at(ix, iy - 1);
      if (!(c.ok && xe.ok && xw.ok && yn.ok && ys.ok)) continue;
      const double lap = (std::log(xe.omega) + std::log(xw.omega) +
                          std::log(yn.omega) + std::log(ys.omega) -
                          4.0 * std::log(c.omega)) /
                         (spacing * spacing);
      curv[ix * steps + iy] = -lap / (2.0 * c.omega);
    }
  for (size_t k = 0; k < samples.size(); ++k) samples[k].curvature = curv[k];
}

ScanSummary summarize_samples(const std::vector<MetricSample>& samples, int steps,
                              int failures) {
  if ((int)samples.size() != steps * steps)
    throw std::invalid_argument("summarize_samples: size mismatch");
  ScanSummary sum;
  sum.failures = failures;
  bool first = true;
  for (const MetricSample& s : samples) {
    if (!s.ok || !std::isfinite(s.curvature)) continue;
    if (first || s.curvature < sum.c_min) { sum.c_min = s.curvature; sum.at_c_min = s.coord; }
    if (first || s.curvature > sum.c_max) { sum.c_max = s.curvature; sum.at_c_max = s.coord; }
    first = false;
  }
  if (first) return sum;
  const double floor_c = std::max(0.0, 0.5 * sum.c_max);
  auto at = [&](int ix, int iy) -> const MetricSample& { return samples[ix * steps + iy]; };
  for (int ix = 1; ix + 1 < steps; ++ix)
    for (int iy = 1; iy + 1 < steps; ++iy) {
      const MetricSample& c = at(ix, iy);
      if (!c.ok || !std::isfinite(c.curvature) || c.curvature <= floor_c) continue;
      bool peak = true;
      for (int dx = -1; dx <= 1 && peak; ++dx)
        for (int dy = -1; dy <= 1 && peak; ++dy) {
          if (!dx && !dy) continue;
          const MetricSample& nb = at(ix + dx, iy + dy);
          if (!nb.ok || !std::isfinite(nb.curvature)) { peak = false; break; }
          if (nb.curvature >= c.curvature) peak = false;
        }
      if (peak) sum.peaks.push_back(c.coord);
    }
  return sum;
}

ScanResult surface_scan(double a, SheetKind sheet, double radius, int steps,
                        const OmegaOpts& opts, int jobs) {
  if (steps < 9) throw std::invalid_argument("surface_scan: steps must be >= 9");
  if (jobs < 1) jobs = 1;
  jobs = std::min(jobs, steps);

  ScanResult res;
  res.steps = steps;
  res.spacing = 2.0 * radius / (steps - 1);
  res.samples.assign((size_t)steps * steps, MetricSample{});

  std::atomic<int> failures{0};
  auto run_strip = [&](int ix0, int ix1) {
    WarmState warm;
    for (int ix = ix0; ix < ix1; ++ix) {
      const bool fwd = ((ix - ix0) % 2 == 0);
      for (int step = 0; step < steps; ++step) {
        const int iy = fwd ? step : steps - 1 - step;
        const cplx coord(-radius + ix * res.spacing, -radius + iy * res.spacing);
        MetricSample& out = res.samples[(size_t)ix * steps + iy];
        try {
          out = omega_at(a, coord, sheet, opts, &warm);
        } catch (const std::exception&) {
          out = MetricSample{};
          out.coord = coord;
          failures.fetch_add(1);
          warm = WarmState{};  // do not chain continuations across a failure
        }
      }
    }
  };

  if (jobs == 1) {
    run_strip(0, steps);
  } else {
    std::vector<std::thread> pool;
    const int base = steps / jobs, extra = steps % jobs;
    int ix = 0;
    for (int w = 0; w < jobs; ++w) {
      const int len = base + (w < extra ? 1 : 0);
      pool.emplace_back(run_strip, ix, ix + len);
      ix += len;
    }
    for (auto& t : pool) t.join();
  }

  if (10 * failures.load() > steps * steps)
    throw NonConvergence("surface_scan: more than 10% of samples failed", 0.0);

  curvature_grid(res.samples, steps, res.spacing);
  res.summary = summarize_samples(res.samples, steps, failures.load());
  return res;
}

}  // namespace hitchin
