#include "hitchin/tangent.hpp"

#include <cmath>

namespace hitchin {

namespace {

// dzbar = (dx + i dy)/2 entrywise; central differences on interior rows and
// columns, zero contribution at the outermost ones. This convention pairs
// with dz_neg below as exact discrete adjoints for fields vanishing on the
// boundary, which the projection CG relies on.
void dzbar_zero_edge(const GridSpec& g, const std::vector<Mat2>& in, std::vector<Mat2>& out) {
  int N = g.N;
  double inv2h = 0.5 / g.h();
  out.assign(g.nodes(), Mat2{});
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      int k = g.idx(i, j);
      Mat2 gx{}, gy{};
      if (i > 0 && i + 1 < N) gx = (in[k + N] - in[k - N]) * inv2h;
      if (j > 0 && j + 1 < N) gy = (in[k + 1] - in[k - 1]) * inv2h;
      out[k] = (gx + gy * cplx(0.0, 1.0)) * 0.5;
    }
}

// minus dz = -(dx - i dy)/2, same edge convention
void dz_neg_zero_edge(const GridSpec& g, const std::vector<Mat2>& in, std::vector<Mat2>& out) {
  int N = g.N;
  double inv2h = 0.5 / g.h();
  out.assign(g.nodes(), Mat2{});
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      int k = g.idx(i, j);
      Mat2 gx{}, gy{};
      if (i > 0 && i + 1 < N) gx = (in[k + N] - in[k - N]) * inv2h;
      if (j > 0 && j + 1 < N) gy = (in[k + 1] - in[k - 1]) * inv2h;
      out[k] = (gx - gy * cplx(0.0, 1.0)) * (-0.5);
    }
}

std::vector<double> rho_weights(const GridSpec& g) {
  std::vector<double> rho(g.nodes());
  double h2 = g.h() * g.h();
  for (int i = 0; i < g.N; ++i)
    for (int j = 0; j < g.N; ++j) rho[g.idx(i, j)] = 0.5 * h2 * g.trap(i, j);
  return rho;
}

double dot_plain(const std::vector<Mat2>& a, const std::vector<Mat2>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += re_tr_adagb(a[k], b[k]);
  return s;
}

struct GaugeOp {
  const GridSpec& g;
  const std::vector<Mat2>& Phi;
  const std::vector<Mat2>& Az;
  std::vector<double> rho;
  std::vector<Mat2> scratch;

  GaugeOp(const FieldMatrices& base)
      : g(base.spec), Phi(base.Phi), Az(base.Az), rho(rho_weights(base.spec)) {}

  void L(const std::vector<Mat2>& eps, std::vector<Mat2>& out_phi, std::vector<Mat2>& out_a) {
    dzbar_zero_edge(g, eps, out_a);
    out_phi.resize(g.nodes());
    for (int k = 0; k < g.nodes(); ++k) {
      out_phi[k] = comm(Phi[k], eps[k]);
      out_a[k] += comm(Az[k], eps[k]);
    }
  }

  // adjoint of L w.r.t. <.,.>_V = sum rho (retr phi + 4 retr a) on the left
  // and the plain matrix dot on the right; output su(2), zero boundary
  void Ldag(const std::vector<Mat2>& w_phi, const std::vector<Mat2>& w_a,
            std::vector<Mat2>& out) {
    scratch.resize(g.nodes());
    for (int k = 0; k < g.nodes(); ++k) scratch[k] = w_a[k] * rho[k];
    dz_neg_zero_edge(g, scratch, out);
    for (int i = 0; i < g.N; ++i)
      for (int j = 0; j < g.N; ++j) {
        int k = g.idx(i, j);
        if (g.boundary(i, j)) {
          out[k] = Mat2{};
          continue;
        }
        Mat2 m = out[k] + comm(Az[k].dagger(), scratch[k]);
        m = m * 4.0;
        m += comm(Phi[k].dagger(), w_phi[k]) * rho[k];
        out[k] = su2_part(m);
      }
  }

  void normal(const std::vector<Mat2>& eps, std::vector<Mat2>& out, std::vector<Mat2>& tp,
              std::vector<Mat2>& ta) {
    L(eps, tp, ta);
    Ldag(tp, ta, out);
  }
};

}  // namespace

FieldMatrices reconstruct_fields(const Field2D& f) {
  return reconstruct_fields(f, std::vector<cplx>());
}

FieldMatrices reconstruct_fields(const Field2D& f, const std::vector<cplx>& alpha) {
  const GridSpec& g = f.spec;
  FieldMatrices out;
  out.spec = g;
  out.Phi.resize(g.nodes());
  out.Az.resize(g.nodes());
  int N = g.N;
  double inv2h = 0.5 / g.h();

  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      int k = g.idx(i, j);
      // centered in the interior, second-order one-sided at the edge
      double px, py;
      if (i == 0)
        px = (-3.0 * f.psi[k] + 4.0 * f.psi[k + N] - f.psi[k + 2 * N]) * inv2h;
      else if (i == N - 1)
        px = (3.0 * f.psi[k] - 4.0 * f.psi[k - N] + f.psi[k - 2 * N]) * inv2h;
      else
        px = (f.psi[k + N] - f.psi[k - N]) * inv2h;
      if (j == 0)
        py = (-3.0 * f.psi[k] + 4.0 * f.psi[k + 1] - f.psi[k + 2]) * inv2h;
      else if (j == N - 1)
        py = (3.0 * f.psi[k] - 4.0 * f.psi[k - 1] + f.psi[k - 2]) * inv2h;
      else
        py = (f.psi[k + 1] - f.psi[k - 1]) * inv2h;

      cplx z = g.z(i, j);
      cplx up = f.fac.mu_plus.eval(z) * std::exp(0.5 * f.psi[k]);
      cplx um = f.fac.mu_minus.eval(z) * std::exp(-0.5 * f.psi[k]);
      out.Phi[k] = Mat2{0.0, up, um, 0.0};
      cplx dzb_psi = 0.5 * cplx(px, py);
      cplx d = -0.25 * dzb_psi;
      out.Az[k] = Mat2{d, 0.0, 0.0, -d};
      if (!alpha.empty()) out.Az[k] += out.Phi[k] * alpha[k];
    }
  return out;
}

TangentVector tangent_raw(const FieldMatrices& plus_half, const FieldMatrices& minus_half,
                          double delta_abs) {
  if (!(plus_half.spec == minus_half.spec))
    throw std::invalid_argument("tangent_raw: grid spec mismatch");
  if (delta_abs < 1e-3 || delta_abs > 0.1)
    throw std::invalid_argument("tangent_raw: |dK| must lie in [1e-3, 0.1]");
  TangentVector v;
  v.spec = plus_half.spec;
  int n = v.spec.nodes();
  v.phi_dot.resize(n);
  v.a_dot.resize(n);
  double inv = 1.0 / delta_abs;
  for (int k = 0; k < n; ++k) {
    v.phi_dot[k] = (plus_half.Phi[k] - minus_half.Phi[k]) * inv;
    v.a_dot[k] = (plus_half.Az[k] - minus_half.Az[k]) * inv;
  }
  return v;
}

double l2_norm_sq(const TangentVector& v) {
  std::vector<double> rho = rho_weights(v.spec);
  double s = 0.0;
  for (int k = 0; k < v.spec.nodes(); ++k)
    s += rho[k] * (v.phi_dot[k].norm_sq() + 4.0 * v.a_dot[k].norm_sq());
  return s;
}

TangentVector gauge_motion(const FieldMatrices& base, const std::vector<Mat2>& eps) {
  GaugeOp op(base);
  TangentVector v;
  v.spec = base.spec;
  op.L(eps, v.phi_dot, v.a_dot);
  return v;
}

ProjectionStats gauge_project(TangentVector& v, const FieldMatrices& base,
                              const ProjectionOpts& opts, std::vector<Mat2>* eps_warm) {
  GaugeOp op(base);
  const GridSpec& g = base.spec;
  int n = g.nodes();
  ProjectionStats stats;

  std::vector<Mat2> b, x, r, p, Ap, tp, ta;
  op.Ldag(v.phi_dot, v.a_dot, b);

  if (eps_warm && eps_warm->size() == static_cast<std::size_t>(n)) {
    x = *eps_warm;
    op.normal(x, Ap, tp, ta);
    r.resize(n);
    for (int k = 0; k < n; ++k) r[k] = b[k] - Ap[k];
  } else {
    x.assign(n, Mat2{});
    r = b;
  }

  double b2 = dot_plain(b, b);
  double r2 = dot_plain(r, r);
  if (b2 > 0.0) {
    p = r;
    double stop2 = opts.cg_tol * opts.cg_tol * b2;
    int stall = 0;
    double best = r2;
    for (int it = 1; it <= opts.max_cg; ++it) {
      op.normal(p, Ap, tp, ta);
      double pAp = dot_plain(p, Ap);
      if (pAp <= 0.0) break;
      double alpha = r2 / pAp;
      for (int k = 0; k < n; ++k) {
        x[k] += p[k] * alpha;
        r[k] = r[k] - Ap[k] * alpha;
      }
      double r2n = dot_plain(r, r);
      stats.cg_iters = it;
      if (r2n <= stop2) {
        r2 = r2n;
        break;
      }
      if (r2n < 0.999 * best) {
        best = r2n;
        stall = 0;
      } else if (++stall > 80) {
        r2 = r2n;
        break;  // residual floor reached
      }
      double beta = r2n / r2;
      r2 = r2n;
      for (int k = 0; k < n; ++k) p[k] = r[k] + p[k] * beta;
    }
    stats.rel_residual = std::sqrt(r2 / b2);
  }

  op.L(x, tp, ta);
  TangentVector removed;
  removed.spec = g;
  removed.phi_dot = tp;
  removed.a_dot = ta;
  stats.removed_norm_sq = l2_norm_sq(removed);
  for (int k = 0; k < n; ++k) {
    v.phi_dot[k] = v.phi_dot[k] - tp[k];
    v.a_dot[k] = v.a_dot[k] - ta[k];
  }
  if (eps_warm) *eps_warm = x;
  return stats;
}

TangentCheck verify_tangent(const TangentVector& v, const FieldMatrices& base) {
  const GridSpec& g = v.spec;
  int N = g.N;
  double inv2h = 0.5 / g.h();
  TangentCheck c;
  // Adot_z = -(Adot_zbar)^dag and Az_base = -(A_zbar)^dag: valid for real
  // displacement directions
  for (int i = 2; i + 2 < N; ++i)
    for (int j = 2; j + 2 < N; ++j) {
      int k = g.idx(i, j);
      auto dzb = [&](const std::vector<Mat2>& f) {
        Mat2 gx = (f[k + N] - f[k - N]) * inv2h;
        Mat2 gy = (f[k + 1] - f[k - 1]) * inv2h;
        return (gx + gy * cplx(0.0, 1.0)) * 0.5;
      };
      Mat2 dzb_phidot = dzb(v.phi_dot);
      Mat2 r1 = dzb_phidot + comm(base.Az[k], v.phi_dot[k]) - comm(base.Phi[k], v.a_dot[k]);

      // dzbar of Adot_z needs the neighbouring a_dot values
      Mat2 gx = (v.a_dot[k + N].dagger() * (-1.0) - v.a_dot[k - N].dagger() * (-1.0)) * inv2h;
      Mat2 gy = (v.a_dot[k + 1].dagger() * (-1.0) - v.a_dot[k - 1].dagger() * (-1.0)) * inv2h;
      Mat2 dzb_adotz = (gx + gy * cplx(0.0, 1.0)) * 0.5;
      Mat2 adotz = v.a_dot[k].dagger() * (-1.0);
      Mat2 r2 = (dzb_adotz + comm(base.Az[k], adotz)) * 4.0 -
                comm(base.Phi[k], v.phi_dot[k].dagger());

      c.r1_sup = std::max(c.r1_sup, std::sqrt(r1.norm_sq()));
      c.r2_su2_sup = std::max(c.r2_su2_sup, std::sqrt(su2_part(r2).norm_sq()));
      c.r2_herm_sup = std::max(c.r2_herm_sup, std::sqrt(herm_part(r2).norm_sq()));
      c.phi_dot_sup = std::max(c.phi_dot_sup, std::sqrt(v.phi_dot[k].norm_sq()));
    }
  return c;
}

}  // namespace hitchin
