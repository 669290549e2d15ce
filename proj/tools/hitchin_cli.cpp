#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "hitchin/asymptotics.hpp"
#include "hitchin/output.hpp"

namespace {

using namespace hitchin;

// Resolution order: command-line flag, then config-file key, then the
// built-in default. Every resolved value is recorded for the manifest.
struct Params {
  std::map<std::string, std::string> cfg;
  std::vector<std::pair<std::string, std::string>> manifest;

  bool provided(const CLI::Option* opt, const std::string& key) const {
    return (opt && opt->count() > 0) || cfg.count(key) > 0;
  }
  double num(const CLI::Option* opt, double flag_val, const std::string& key, double def) {
    double v = def;
    if (opt && opt->count() > 0) v = flag_val;
    else if (auto it = cfg.find(key); it != cfg.end()) v = std::stod(it->second);
    manifest.emplace_back(key, full17(v));
    return v;
  }
  int integer(const CLI::Option* opt, int flag_val, const std::string& key, int def) {
    int v = def;
    if (opt && opt->count() > 0) v = flag_val;
    else if (auto it = cfg.find(key); it != cfg.end()) v = std::stoi(it->second);
    manifest.emplace_back(key, std::to_string(v));
    return v;
  }
  std::string str(const CLI::Option* opt, const std::string& flag_val,
                  const std::string& key, const std::string& def) {
    std::string v = def;
    if (opt && opt->count() > 0) v = flag_val;
    else if (auto it = cfg.find(key); it != cfg.end()) v = it->second;
    manifest.emplace_back(key, v);
    return v;
  }
  bool flag(const CLI::Option* opt, const std::string& key, bool def = false) {
    bool v = def;
    if (opt && opt->count() > 0) v = true;
    else if (auto it = cfg.find(key); it != cfg.end())
      v = (it->second == "1" || it->second == "true" || it->second == "yes");
    manifest.emplace_back(key, v ? "true" : "false");
    return v;
  }
};

struct GlobalFlags {
  std::string config_path, out_flag;
  int jobs = 1;
  int verbosity = 0;
  CLI::Option *o_out = nullptr, *o_jobs = nullptr;
};

std::string resolve_dir(Params& P, const GlobalFlags& g) {
  std::string dir = resolve_out_dir(P.str(g.o_out, g.out_flag, "out", std::string()));
  ensure_dir(dir);
  return dir;
}

GridSpec auto_grid(Params& P, const CLI::Option* o_N, int N_val, const CLI::Option* o_L,
                   double L_val, double needed_root_radius) {
  int N = P.integer(o_N, N_val, "grid-N", 257);
  double L = P.num(o_L, L_val, "grid-L", 0.0);
  if (L <= 0.0) {
    L = default_L(needed_root_radius);
    P.manifest.back().second = full17(L);  // echo the resolved value, not 0
  }
  GridSpec spec{L, N};
  spec.validate();
  return spec;
}

int run_solve_radial(Params& P, const GlobalFlags& g, const CLI::Option* o_n, int n_val,
                     const CLI::Option* o_B, double B_val, const CLI::Option* o_R,
                     double R_val, const CLI::Option* o_pts, int pts_val) {
  P.manifest.emplace_back("command", "solve-radial");
  const int n = P.integer(o_n, n_val, "n", 1);
  const bool b_given = P.provided(o_B, "B");
  const double B = P.num(o_B, B_val, "B", 0.0);
  if (n % 2 == 1 && b_given)
    throw std::invalid_argument(
        "--B applies only to even n; odd n is constrained to B = 0");
  const double R = P.num(o_R, R_val, "R", 20.0);
  const int points = P.integer(o_pts, pts_val, "points", 2000);
  const std::string dir = resolve_dir(P, g);

  RadialProfile p = solve_radial(n, B, R, points);
  write_radial_csv(dir + "/radial_profile.csv", p);
  write_manifest(dir, P.manifest);

  std::printf("flux = %.10g\n", flux(p));
  std::printf("flux_over_pi = %.10g\n", flux(p) / M_PI);
  if (n == 1) {
    std::printf("painleve_residual_sup = %.6g\n", painleve_residual(p));
    std::printf("painleve_h_end = %.10g\n", painleve_h_end(p));
  }
  if (g.verbosity > 0)
    std::printf("newton_iters = %d, residual_sup = %.3g\n", p.newton_iters,
                p.residual_sup);
  return 0;
}

int run_scan_b(Params& P, const GlobalFlags& g, const CLI::Option* o_bmax, double bmax_val,
               const CLI::Option* o_steps, int steps_val, const CLI::Option* o_R,
               double R_val, const CLI::Option* o_pts, int pts_val,
               const CLI::Option* o_svg) {
  P.manifest.emplace_back("command", "scan-b");
  const double bmax = P.num(o_bmax, bmax_val, "B-max", 10.0);
  const int steps = P.integer(o_steps, steps_val, "steps", 21);
  const double R = P.num(o_R, R_val, "R", 20.0);
  const int points = P.integer(o_pts, pts_val, "points", 2000);
  const bool svg = P.flag(o_svg, "svg");
  if (steps < 2) throw std::invalid_argument("scan-b: --steps must be >= 2");
  if (!(bmax > 0.0)) throw std::invalid_argument("scan-b: --B-max must be > 0");
  const std::string dir = resolve_dir(P, g);

  std::vector<double> Bs(steps);
  for (int i = 0; i < steps; ++i) Bs[i] = bmax * i / (steps - 1);
  auto rows = scan_B(Bs, R, points);
  write_scan_csv(dir + "/scan_b.csv", rows);
  if (svg) {
    std::vector<double> xs, ys;
    for (auto& [b, f] : rows) { xs.push_back(b); ys.push_back(f); }
    write_line_svg(dir + "/scan_b.svg", xs, ys, "B", "flux / pi");
  }
  write_manifest(dir, P.manifest);
  std::printf("flux_over_pi(B=0) = %.10g\n", rows.front().second);
  std::printf("flux_over_pi(B=%.6g) = %.10g\n", rows.back().first, rows.back().second);
  return 0;
}

int run_surface(Params& P, const GlobalFlags& g, const CLI::Option* o_sheet,
                const std::string& sheet_val, const CLI::Option* o_a, double a_val,
                const CLI::Option* o_radius, double radius_val, const CLI::Option* o_steps,
                int steps_val, const CLI::Option* o_delta, double delta_val,
                const CLI::Option* o_N, int N_val, const CLI::Option* o_L, double L_val,
                const CLI::Option* o_svg) {
  P.manifest.emplace_back("command", "surface");
  const std::string sheet_s = P.str(o_sheet, sheet_val, "sheet", "");
  SheetKind sheet;
  if (sheet_s == "plus") sheet = SheetKind::SPlus;
  else if (sheet_s == "minus") sheet = SheetKind::SMinus;
  else throw std::invalid_argument("surface: --sheet must be plus or minus");
  const double a = P.num(o_a, a_val, "a", 0.0);
  const double radius = P.num(o_radius, radius_val, "radius", 3.0);
  const int steps = P.integer(o_steps, steps_val, "steps", 21);
  const double delta = P.num(o_delta, delta_val, "delta", 0.02);
  if (a < 0.0) throw std::invalid_argument("surface: --a must be >= 0");
  if (!(radius > 0.0)) throw std::invalid_argument("surface: --radius must be > 0");

  // probe the scan corners and edge midpoints for the largest root the grid
  // must enclose
  double rmax = 0.0;
  for (double re : {-radius, 0.0, radius})
    for (double im : {-radius, 0.0, radius}) {
      const cplx coord(re, im);
      const Factorization f = (sheet == SheetKind::SPlus)
                                  ? factorize_splus(Cubic{a, coord})
                                  : sminus_at(a, coord);
      rmax = std::max(rmax, f.max_root_radius());
    }
  const GridSpec spec = auto_grid(P, o_N, N_val, o_L, L_val, rmax);
  const int jobs = P.integer(g.o_jobs, g.jobs, "jobs", 1);
  const bool svg = P.flag(o_svg, "svg");
  const std::string dir = resolve_dir(P, g);

  OmegaOpts opts;
  opts.delta = delta;
  opts.spec = spec;
  ScanResult scan = surface_scan(a, sheet, radius, steps, opts, jobs);

  write_surface_csv(dir + "/surface.csv", scan);
  const std::string summary = surface_summary_text(scan);
  std::fputs(summary.c_str(), stdout);
  {
    std::ofstream f(dir + "/summary.txt");
    f << summary;
  }
  if (svg) {
    std::vector<double> curv(scan.samples.size());
    for (size_t i = 0; i < curv.size(); ++i) curv[i] = scan.samples[i].curvature;
    write_grid_svg(dir + "/curvature.svg", curv, steps, steps, -radius, radius, -radius,
                   radius);
  }
  write_manifest(dir, P.manifest);
  return 0;
}

int run_solve_2d(Params& P, const GlobalFlags& g, const CLI::Option* o_sheet,
                 const std::string& sheet_val, const CLI::Option* o_a, double a_val,
                 const CLI::Option* o_kre, double kre_val, const CLI::Option* o_kim,
                 double kim_val, const CLI::Option* o_wre, double wre_val,
                 const CLI::Option* o_wim, double wim_val, const CLI::Option* o_N,
                 int N_val, const CLI::Option* o_L, double L_val,
                 const CLI::Option* o_svg) {
  P.manifest.emplace_back("command", "solve-2d");
  const std::string sheet_s = P.str(o_sheet, sheet_val, "sheet", "plus");
  const double a = P.num(o_a, a_val, "a", 0.0);
  const cplx K(P.num(o_kre, kre_val, "K-re", 0.0), P.num(o_kim, kim_val, "K-im", 0.0));
  const cplx W(P.num(o_wre, wre_val, "W-re", 0.0), P.num(o_wim, wim_val, "W-im", 0.0));

  Factorization fac = degenerate_split();
  if (sheet_s == "plus") fac = factorize_splus(Cubic{a, K});
  else if (sheet_s == "minus") fac = sminus_at(a, W);
  else if (sheet_s != "split")
    throw std::invalid_argument("solve-2d: --sheet must be plus, minus or split");

  const GridSpec spec = auto_grid(P, o_N, N_val, o_L, L_val, fac.max_root_radius());
  const bool svg = P.flag(o_svg, "svg");
  const std::string dir = resolve_dir(P, g);

  Field2D f = solve_psi(fac, spec);
  write_heatmap_csv(dir + "/heatmap.csv", f);
  if (svg) {
    write_grid_svg(dir + "/psi.svg", f.psi, spec.N, spec.N, -spec.L, spec.L, -spec.L,
                   spec.L);
    write_grid_svg(dir + "/absF.svg", absF_grid(f), spec.N, spec.N, -spec.L, spec.L,
                   -spec.L, spec.L);
  }
  write_manifest(dir, P.manifest);

  double sup_psi = 0.0;
  for (double v : f.psi) sup_psi = std::max(sup_psi, std::abs(v));
  std::printf("flux = %.10g\n", flux2d(f));
  std::printf("flux_over_pi = %.10g\n", flux2d(f) / M_PI);
  std::printf("sup_abs_psi = %.6g\n", sup_psi);
  if (g.verbosity > 0)
    std::printf("newton_iters = %d, residual_sup = %.3g\n", f.newton_iters,
                f.residual_sup);
  return 0;
}

int run_asymptotic(Params& P, const GlobalFlags& g, const CLI::Option* o_checkc,
                   const CLI::Option* o_normpk, const std::vector<int>& normpk_val,
                   const CLI::Option* o_ups) {
  P.manifest.emplace_back("command", "asymptotic");
  const bool check_c = P.flag(o_checkc, "check-c");
  const bool ups = P.flag(o_ups, "upsilon-test");
  std::vector<int> npk = normpk_val;
  if (!(o_normpk && o_normpk->count() > 0)) {
    npk.clear();
    if (auto it = P.cfg.find("norm-pk"); it != P.cfg.end()) {
      std::istringstream is(it->second);
      int v;
      while (is >> v) npk.push_back(v);
    }
  }
  if (!npk.empty()) {
    std::string joined;
    for (size_t i = 0; i < npk.size(); ++i)
      joined += (i ? " " : "") + std::to_string(npk[i]);
    P.manifest.emplace_back("norm-pk", joined);
  }
  const int modes = int(check_c) + int(ups) + int(!npk.empty());
  if (modes != 1)
    throw std::invalid_argument(
        "asymptotic: pass exactly one of --check-c, --norm-pk n k, --upsilon-test");
  const std::string dir = resolve_dir(P, g);
  write_manifest(dir, P.manifest);

  if (check_c) {
    const double c1 = constant_c();
    const double c2 = constant_c_2d();
    std::printf("c_1d = %.10g\n", c1);
    std::printf("c_2d = %.10g\n", c2);
    std::printf("difference = %.3g (tolerance 1e-4)\n", std::abs(c1 - c2));
    if (std::abs(c1 - c2) > 1e-4) {
      std::printf("FAIL\n");
      return 2;
    }
    std::printf("PASS\n");
    return 0;
  }

  if (ups) {
    // the defining matrix is integer; its cube must be the identity exactly
    long m[2][2] = {{0, -1}, {1, -1}};
    long sq[2][2], cu[2][2];
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        sq[i][j] = m[i][0] * m[0][j] + m[i][1] * m[1][j];
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        cu[i][j] = sq[i][0] * m[0][j] + sq[i][1] * m[1][j];
    bool ok = cu[0][0] == 1 && cu[0][1] == 0 && cu[1][0] == 0 && cu[1][1] == 1 &&
              (m[0][0] * m[1][1] - m[0][1] * m[1][0]) == 1;

    std::mt19937 rng(20260816u);
    std::uniform_real_distribution<double> ang(-3.14159, 3.14159);
    std::uniform_real_distribution<double> dd(-1.0, 1.0);
    double worst_chart = 0.0, worst_form = 0.0;
    for (int t = 0; t < 100; ++t) {
      AsymptoticChart ch{cplx(1.0 + t, 0.5), ang(rng), ang(rng)};
      AsymptoticChart thrice = upsilon(upsilon(upsilon(ch)));
      worst_chart = std::max({worst_chart, std::abs(thrice.eta1 - ch.eta1),
                              std::abs(thrice.eta2 - ch.eta2)});
      const double d1 = dd(rng), d2 = dd(rng);
      worst_form = std::max(worst_form,
                            std::abs(eta_form(d1, d2) - eta_form(-d2, d1 - d2)));
    }
    ok = ok && worst_chart <= 1e-9 && worst_form <= 1e-12;
    std::printf("upsilon matrix cubed = identity, det = 1: %s\n", ok ? "yes" : "no");
    std::printf("upsilon^3 chart deviation (100 charts) = %.3g\n", worst_chart);
    std::printf("eta form invariance deviation = %.3g\n", worst_form);
    std::printf(ok ? "PASS\n" : "FAIL\n");
    return ok ? 0 : 2;
  }

  if (npk.size() != 2)
    throw std::invalid_argument("asymptotic: --norm-pk expects two integers n k");
  const int n = npk[0], k = npk[1];
  if (n < 1 || n > 8) throw std::invalid_argument("asymptotic: norm-pk n out of range");
  // H = z^n - 1: simple zeros on the unit circle
  std::vector<cplx> coeffs(n + 1, cplx(0.0));
  coeffs[0] = 1.0;
  coeffs[n] = -1.0;
  const double R_cut = 12.0;
  NormPk res = norm_pk(n, k, Poly(coeffs), R_cut);
  if (res.cls == NormClass::Converges)
    std::printf("norm_pk(n=%d, k=%d, H=z^%d-1, R_cut=%g): converges, value = %.6g\n", n,
                k, n, R_cut, res.value);
  else
    std::printf(
        "norm_pk(n=%d, k=%d, H=z^%d-1, R_cut=%g): diverges, truncated value = %.6g, "
        "growth_rate = %.3g\n",
        n, k, n, R_cut, res.value, res.growth_rate);
  std::printf("moduli_dimension(%d) = %d\n", n, moduli_dimension(n));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SU(2) Hitchin-equation solvers and moduli-surface geometry"};
  app.require_subcommand(0, 1);

  GlobalFlags g;
  app.add_option("--config", g.config_path, "flat key = value parameter file");
  g.o_out = app.add_option("--out", g.out_flag,
                           "output directory (default: $HITCHIN_OUT_DIR or .)");
  g.o_jobs = app.add_option("--jobs", g.jobs, "worker threads for scans (default 1)");
  app.add_flag("-v,--verbose", g.verbosity, "print solver diagnostics");

  // solve-radial
  auto* sr = app.add_subcommand("solve-radial",
                                "rotationally symmetric profile for n = 1 or 2");
  sr->fallthrough();
  int sr_n = 1, sr_pts = 2000;
  double sr_B = 0.0, sr_R = 20.0;
  auto* sr_on = sr->add_option("--n", sr_n, "zero count n (1 or 2)");
  auto* sr_ob = sr->add_option("--B", sr_B, "splitting parameter (even n only)");
  auto* sr_or = sr->add_option("--R", sr_R, "domain radius");
  auto* sr_op = sr->add_option("--points", sr_pts, "radial nodes");

  // scan-b
  auto* sb = app.add_subcommand("scan-b", "n = 2 flux as a function of B");
  sb->fallthrough();
  int sb_steps = 21, sb_pts = 2000;
  double sb_bmax = 10.0, sb_R = 20.0;
  auto* sb_ob = sb->add_option("--B-max", sb_bmax, "largest B");
  auto* sb_os = sb->add_option("--steps", sb_steps, "number of B values");
  auto* sb_or = sb->add_option("--R", sb_R, "domain radius");
  auto* sb_op = sb->add_option("--points", sb_pts, "radial nodes");
  auto* sb_ov = sb->add_flag("--svg", "emit a line plot");

  // surface
  auto* su = app.add_subcommand("surface",
                                "conformal factor and curvature on a geodesic surface");
  su->fallthrough();
  std::string su_sheet;
  double su_a = 0.0, su_radius = 3.0, su_delta = 0.02, su_L = 0.0;
  int su_steps = 21, su_N = 257;
  auto* su_osheet = su->add_option("--sheet", su_sheet, "plus or minus");
  auto* su_oa = su->add_option("--a", su_a, "cubic parameter a >= 0");
  auto* su_orad = su->add_option("--radius", su_radius, "half-width of the coordinate square");
  auto* su_osteps = su->add_option("--steps", su_steps, "samples per side (>= 9)");
  auto* su_odelta = su->add_option("--delta", su_delta, "finite-difference displacement");
  auto* su_oN = su->add_option("--grid-N", su_N, "solver grid nodes per side (odd)");
  auto* su_oL = su->add_option("--grid-L", su_L, "solver half-width (0 = auto)");
  auto* su_ov = su->add_flag("--svg", "emit a curvature heatmap");

  // solve-2d
  auto* s2 = app.add_subcommand("solve-2d", "single planar solve with heatmap export");
  s2->fallthrough();
  std::string s2_sheet = "plus";
  double s2_a = 0.0, s2_kre = 0.0, s2_kim = 0.0, s2_wre = 0.0, s2_wim = 0.0, s2_L = 0.0;
  int s2_N = 257;
  auto* s2_osheet = s2->add_option("--sheet", s2_sheet, "plus, minus or split");
  auto* s2_oa = s2->add_option("--a", s2_a, "cubic parameter a >= 0");
  auto* s2_okre = s2->add_option("--K-re", s2_kre, "Re K (sheet plus)");
  auto* s2_okim = s2->add_option("--K-im", s2_kim, "Im K (sheet plus)");
  auto* s2_owre = s2->add_option("--W-re", s2_wre, "Re W (sheet minus)");
  auto* s2_owim = s2->add_option("--W-im", s2_wim, "Im W (sheet minus)");
  auto* s2_oN = s2->add_option("--grid-N", s2_N, "grid nodes per side (odd)");
  auto* s2_oL = s2->add_option("--grid-L", s2_L, "half-width (0 = auto)");
  auto* s2_ov = s2->add_flag("--svg", "emit psi and |F| heatmaps");

  // asymptotic
  auto* as = app.add_subcommand("asymptotic", "singular-model checks");
  as->fallthrough();
  std::vector<int> as_npk;
  auto* as_oc = as->add_flag("--check-c", "compare the two routes to the constant c");
  auto* as_on = as->add_option("--norm-pk", as_npk, "n k: deformation norm of z^n - 1")
                    ->expected(2);
  auto* as_ou = as->add_flag("--upsilon-test", "verify the modular monodromy");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  if (app.get_subcommands().empty()) {
    std::cerr << app.help();
    return 1;
  }

  try {
    Params P;
    if (!g.config_path.empty()) P.cfg = parse_config(g.config_path);

    if (sr->parsed())
      return run_solve_radial(P, g, sr_on, sr_n, sr_ob, sr_B, sr_or, sr_R, sr_op, sr_pts);
    if (sb->parsed())
      return run_scan_b(P, g, sb_ob, sb_bmax, sb_os, sb_steps, sb_or, sb_R, sb_op,
                        sb_pts, sb_ov);
    if (su->parsed())
      return run_surface(P, g, su_osheet, su_sheet, su_oa, su_a, su_orad, su_radius,
                         su_osteps, su_steps, su_odelta, su_delta, su_oN, su_N, su_oL,
                         su_L, su_ov);
    if (s2->parsed())
      return run_solve_2d(P, g, s2_osheet, s2_sheet, s2_oa, s2_a, s2_okre, s2_kre,
                          s2_okim, s2_kim, s2_owre, s2_wre, s2_owim, s2_wim, s2_oN, s2_N,
                          s2_oL, s2_L, s2_ov);
    if (as->parsed()) return run_asymptotic(P, g, as_oc, as_on, as_npk, as_ou);

    std::cerr << app.help();
    return 1;
  } catch (const NonConvergence& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
