#include "hitchin/elliptic.hpp"

#include <cmath>
#include <string>

namespace hitchin {

namespace {

struct Tables {
  std::vector<double> P, M;  // |mu+|^2, |mu-|^2 at nodes
  Tables(const Factorization& fac, const GridSpec& g) {
    P.resize(g.nodes());
    M.resize(g.nodes());
    for (int i = 0; i < g.N; ++i)
      for (int j = 0; j < g.N; ++j) {
        cplx z = g.z(i, j);
        P[g.idx(i, j)] = std::norm(fac.mu_plus.eval(z));
        M[g.idx(i, j)] = std::norm(fac.mu_minus.eval(z));
      }
  }
};

double interior_residual_sup(const GridSpec& g, const Tables& t, const std::vector<double>& psi,
                             std::vector<double>* out) {
  double h2 = g.h() * g.h();
  double sup = 0.0;
  if (out) out->assign(g.nodes(), 0.0);
  for (int i = 1; i + 1 < g.N; ++i)
    for (int j = 1; j + 1 < g.N; ++j) {
      int k = g.idx(i, j);
      double lap = (psi[k - g.N] + psi[k + g.N] + psi[k - 1] + psi[k + 1] - 4.0 * psi[k]) / h2;
      double r = lap - 2.0 * (t.P[k] * std::exp(psi[k]) - t.M[k] * std::exp(-psi[k]));
      if (out) (*out)[k] = r;
      sup = std::max(sup, std::abs(r));
    }
  return sup;
}

// PCG for (-Lap + w) d = b on interior nodes, Jacobi preconditioner
int pcg(const GridSpec& g, const std::vector<double>& w, const std::vector<double>& b,
        std::vector<double>& x, double rel_tol, int max_iter) {
  int n = g.nodes(), N = g.N;
  double h2 = g.h() * g.h();
  std::vector<double> r(n, 0.0), zv(n, 0.0), p(n, 0.0), Ap(n, 0.0);
  x.assign(n, 0.0);
  double b2 = 0.0;
  for (int i = 1; i + 1 < N; ++i)
    for (int j = 1; j + 1 < N; ++j) {
      int k = g.idx(i, j);
      r[k] = b[k];
      b2 += b[k] * b[k];
    }
  if (b2 == 0.0) return 0;
  double rz = 0.0;
  for (int i = 1; i + 1 < N; ++i)
    for (int j = 1; j + 1 < N; ++j) {
      int k = g.idx(i, j);
      zv[k] = r[k] / (4.0 / h2 + w[k]);
      p[k] = zv[k];
      rz += r[k] * zv[k];
    }
  double stop2 = rel_tol * rel_tol * b2;
  for (int it = 1; it <= max_iter; ++it) {
    double pAp = 0.0;
    for (int i = 1; i + 1 < N; ++i)
      for (int j = 1; j + 1 < N; ++j) {
        int k = g.idx(i, j);
        Ap[k] = (4.0 * p[k] - p[k - N] - p[k + N] - p[k - 1] - p[k + 1]) / h2 + w[k] * p[k];
        pAp += p[k] * Ap[k];
      }
    double alpha = rz / pAp;
    double r2 = 0.0;
    for (int i = 1; i + 1 < N; ++i)
      for (int j = 1; j + 1 < N; ++j) {
        int k = g.idx(i, j);
        x[k] += alpha * p[k];
        r[k] -= alpha * Ap[k];
        r2 += r[k] * r[k];
      }
    if (r2 <= stop2) return it;
    double rz_new = 0.0;
    for (int i = 1; i + 1 < N; ++i)
      for (int j = 1; j + 1 < N; ++j) {
        int k = g.idx(i, j);
        zv[k] = r[k] / (4.0 / h2 + w[k]);
        rz_new += r[k] * zv[k];
      }
    double beta = rz_new / rz;
    rz = rz_new;
    for (int i = 1; i + 1 < N; ++i)
      for (int j = 1; j + 1 < N; ++j) {
        int k = g.idx(i, j);
        p[k] = zv[k] + beta * p[k];
      }
  }
  return max_iter;
}

}  // namespace

Field2D solve_psi(const Factorization& fac, const GridSpec& spec, const Field2D* initial,
                  const EllipticOpts& opts) {
  spec.validate();
  // all lump cores strictly inside the margin
  auto check_roots = [&](const Poly& mu) {
    if (mu.degree() < 1) return;
    for (const auto& z : roots(mu))
      if (std::max(std::abs(z.real()), std::abs(z.imag())) > spec.L - 3.0)
        throw std::domain_error("solve_psi: factorization roots too close to the boundary");
  };
  check_roots(fac.mu_plus);
  check_roots(fac.mu_minus);

  Field2D f;
  f.spec = spec;
  f.fac = fac;
  Tables t(fac, spec);
  int N = spec.N;
  double h2 = spec.h() * spec.h();

  f.psi.resize(spec.nodes());
  if (initial) {
    if (!(initial->spec == spec))
      throw std::invalid_argument("solve_psi: warm start grid mismatch");
    f.psi = initial->psi;
  } else {
    for (int k = 0; k < spec.nodes(); ++k)
      f.psi[k] = 0.5 * std::log((t.M[k] + h2) / (t.P[k] + h2));
  }
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      if (spec.boundary(i, j)) f.psi[spec.idx(i, j)] = boundary_psi(fac, spec.z(i, j));

  std::vector<double> res, w(spec.nodes(), 0.0), step;
  double err = interior_residual_sup(spec, t, f.psi, &res);
  std::string history;

  for (int it = 0; it < opts.max_newton && err > opts.tol; ++it) {
    for (int k = 0; k < spec.nodes(); ++k)
      w[k] = 2.0 * (t.P[k] * std::exp(f.psi[k]) + t.M[k] * std::exp(-f.psi[k]));
    pcg(spec, w, res, step, opts.cg_tol, opts.max_cg);

    double lambda = 1.0;
    std::vector<double> save = f.psi;
    for (int halve = 0; halve <= 30; ++halve) {
      for (int k = 0; k < spec.nodes(); ++k) f.psi[k] = save[k] + lambda * step[k];
      double trial = interior_residual_sup(spec, t, f.psi, &res);
      if (trial < err || halve == 30) {
        err = trial;
        break;
      }
      lambda *= 0.5;
    }
    f.newton_iters = it + 1;
    history += (history.empty() ? "" : " ") + std::to_string(err);
  }

  f.residual_sup = err;
  if (err > opts.tol)
    throw NonConvergence("solve_psi: Newton stalled, residual history: " + history, err);
  return f;
}

double residual(const Field2D& f) {
  Tables t(f.fac, f.spec);
  return interior_residual_sup(f.spec, t, f.psi, nullptr);
}

std::vector<double> linearized_apply(const Field2D& f, const std::vector<double>& d) {
  const GridSpec& g = f.spec;
  Tables t(f.fac, g);
  double h2 = g.h() * g.h();
  std::vector<double> out(g.nodes(), 0.0);
  for (int i = 1; i + 1 < g.N; ++i)
    for (int j = 1; j + 1 < g.N; ++j) {
      int k = g.idx(i, j);
      double lap = (d[k - g.N] + d[k + g.N] + d[k - 1] + d[k + 1] - 4.0 * d[k]) / h2;
      out[k] = lap - 2.0 * (t.P[k] * std::exp(f.psi[k]) + t.M[k] * std::exp(-f.psi[k])) * d[k];
    }
  return out;
}

std::vector<double> absF_grid(const Field2D& f) {
  Tables t(f.fac, f.spec);
  std::vector<double> v(f.spec.nodes());
  for (int k = 0; k < f.spec.nodes(); ++k)
    v[k] = 0.5 * std::abs(t.P[k] * std::exp(f.psi[k]) - t.M[k] * std::exp(-f.psi[k]));
  return v;
}

double flux2d(const Field2D& f) {
  std::vector<double> v = absF_grid(f);
  double h2 = f.spec.h() * f.spec.h();
  double s = 0.0;
  for (int i = 0; i < f.spec.N; ++i)
    for (int j = 0; j < f.spec.N; ++j) s += f.spec.trap(i, j) * v[f.spec.idx(i, j)];
  return s * h2;
}

}  // namespace hitchin
