#include "hitchin/output.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hitchin {
namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  return f;
}

}  // namespace

std::string sig6(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string full17(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::map<std::string, std::string> parse_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot read config file: " + path);
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key.empty())
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": empty key");
    out[key] = val;
  }
  return out;
}

std::string resolve_out_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("HITCHIN_OUT_DIR"); env && *env) return env;
  return ".";
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create directory " + dir + ": " + ec.message());
}

void write_manifest(const std::string& dir,
                    const std::vector<std::pair<std::string, std::string>>& params) {
  auto f = open_out(dir + "/run-manifest.txt");
  f << "# resolved run parameters; replay with --config <this file>\n";
  std::time_t now = std::time(nullptr);
  char stamp[64];
  std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  f << "# timestamp: " << stamp << "\n";
  for (const auto& [k, v] : params) f << k << " = " << v << "\n";
}

void write_radial_csv(const std::string& path, const RadialProfile& p) {
  auto f = open_out(path);
  f << "r,psi,dpsi_dr,absF\n";
  const std::vector<double> dp = dpsi_dr(p);
  const std::vector<double> af = absF(p);
  for (size_t i = 0; i < p.r.size(); ++i)
    f << sig6(p.r[i]) << ',' << sig6(p.psi[i]) << ',' << sig6(dp[i]) << ','
      << sig6(af[i]) << "\n";
}

void write_scan_csv(const std::string& path,
                    const std::vector<std::pair<double, double>>& rows) {
  auto f = open_out(path);
  f << "B,flux_over_pi\n";
  for (const auto& [b, fl] : rows) f << sig6(b) << ',' << sig6(fl) << "\n";
}

void write_heatmap_csv(const std::string& path, const Field2D& fld) {
  auto f = open_out(path);
  f << "x,y,psi,absF\n";
  const std::vector<double> af = absF_grid(fld);
  const GridSpec& g = fld.spec;
  for (int i = 0; i < g.N; ++i)
    for (int j = 0; j < g.N; ++j) {
      size_t k = g.idx(i, j);
      f << sig6(g.x(i)) << ',' << sig6(g.x(j)) << ',' << sig6(fld.psi[k]) << ','
        << sig6(af[k]) << "\n";
    }
}

void write_surface_csv(const std::string& path, const ScanResult& scan) {
  auto f = open_out(path);
  f << "coord_re,coord_im,omega,curvature,iso_spread,resid_gauge\n";
  for (const MetricSample& s : scan.samples)
    f << sig6(s.coord.real()) << ',' << sig6(s.coord.imag()) << ',' << sig6(s.omega)
      << ',' << sig6(s.curvature) << ',' << sig6(s.iso_spread) << ','
      << sig6(s.resid_gauge) << "\n";
}

std::string surface_summary_text(const ScanResult& scan) {
  std::ostringstream o;
  const ScanSummary& s = scan.summary;
  o << "{\n";
  o << "  \"steps\": " << scan.steps << ",\n";
  o << "  \"spacing\": " << sig6(scan.spacing) << ",\n";
  o << "  \"failures\": " << s.failures << ",\n";
  o << "  \"c_min\": " << sig6(s.c_min) << ", \"at_c_min\": [" << sig6(s.at_c_min.real())
    << ", " << sig6(s.at_c_min.imag()) << "],\n";
  o << "  \"c_max\": " << sig6(s.c_max) << ", \"at_c_max\": [" << sig6(s.at_c_max.real())
    << ", " << sig6(s.at_c_max.imag()) << "],\n";
  o << "  \"peaks\": [";
  for (size_t i = 0; i < s.peaks.size(); ++i) {
    if (i) o << ", ";
    o << "[" << sig6(s.peaks[i].real()) << ", " << sig6(s.peaks[i].imag()) << "]";
  }
  o << "]\n}\n";
  return o.str();
}

namespace {

struct Rgb {
  int r, g, b;
};

Rgb colormap(double t) {
  // blue -> near-white -> red, linear in each half
  const Rgb lo{40, 70, 160}, mid{245, 245, 245}, hi{170, 30, 40};
  auto lerp = [](const Rgb& a, const Rgb& b, double u) {
    return Rgb{int(a.r + (b.r - a.r) * u + 0.5), int(a.g + (b.g - a.g) * u + 0.5),
               int(a.b + (b.b - a.b) * u + 0.5)};
  };
  t = std::min(1.0, std::max(0.0, t));
  return t < 0.5 ? lerp(lo, mid, 2.0 * t) : lerp(mid, hi, 2.0 * t - 1.0);
}

std::string rgb_str(const Rgb& c) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "rgb(%d,%d,%d)", c.r, c.g, c.b);
  return buf;
}

std::string f2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace

void write_line_svg(const std::string& path, const std::vector<double>& xs,
                    const std::vector<double>& ys, const std::string& x_label,
                    const std::string& y_label) {
  if (xs.size() != ys.size() || xs.empty())
    throw std::invalid_argument("write_line_svg: size mismatch");
  const double W = 640, H = 420, ml = 70, mr = 20, mt = 20, mb = 50;
  double x0 = xs[0], x1 = xs[0], y0 = ys[0], y1 = ys[0];
  for (size_t i = 0; i < xs.size(); ++i) {
    x0 = std::min(x0, xs[i]); x1 = std::max(x1, xs[i]);
    y0 = std::min(y0, ys[i]); y1 = std::max(y1, ys[i]);
  }
  if (x1 == x0) x1 = x0 + 1.0;
  if (y1 == y0) y1 = y0 + 1.0;
  auto px = [&](double x) { return ml + (x - x0) / (x1 - x0) * (W - ml - mr); };
  auto py = [&](double y) { return H - mb - (y - y0) / (y1 - y0) * (H - mt - mb); };

  auto f = open_out(path);
  f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
    << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
  f << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  f << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << (W - ml - mr)
    << "\" height=\"" << (H - mt - mb)
    << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
  f << "<polyline fill=\"none\" stroke=\"rgb(40,70,160)\" stroke-width=\"1.5\" points=\"";
  for (size_t i = 0; i < xs.size(); ++i)
    f << f2(px(xs[i])) << ',' << f2(py(ys[i])) << ' ';
  f << "\"/>\n";
  f << "<text x=\"" << (W / 2) << "\" y=\"" << (H - 12)
    << "\" text-anchor=\"middle\" font-size=\"14\">" << x_label << "</text>\n";
  f << "<text x=\"16\" y=\"" << (H / 2)
    << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 16 " << (H / 2)
    << ")\">" << y_label << "</text>\n";
  f << "<text x=\"" << ml << "\" y=\"" << (H - mb + 18)
    << "\" text-anchor=\"middle\" font-size=\"12\">" << sig6(x0) << "</text>\n";
  f << "<text x=\"" << (W - mr) << "\" y=\"" << (H - mb + 18)
    << "\" text-anchor=\"middle\" font-size=\"12\">" << sig6(x1) << "</text>\n";
  f << "<text x=\"" << (ml - 6) << "\" y=\"" << (H - mb)
    << "\" text-anchor=\"end\" font-size=\"12\">" << sig6(y0) << "</text>\n";
  f << "<text x=\"" << (ml - 6) << "\" y=\"" << (mt + 12)
    << "\" text-anchor=\"end\" font-size=\"12\">" << sig6(y1) << "</text>\n";
  f << "</svg>\n";
}

void write_grid_svg(const std::string& path, const std::vector<double>& values,
                    int nx, int ny, double x0, double x1, double y0, double y1) {
  if ((int)values.size() != nx * ny)
    throw std::invalid_argument("write_grid_svg: size mismatch");
  double vmin = 0, vmax = 0;
  bool seen = false;
  for (double v : values) {
    if (!std::isfinite(v)) continue;
    if (!seen) { vmin = vmax = v; seen = true; }
    vmin = std::min(vmin, v);
    vmax = std::max(vmax, v);
  }
  if (!seen) { vmin = 0.0; vmax = 1.0; }
  if (vmax == vmin) vmax = vmin + 1.0;

  // cap the emitted cell count; averaging blocks keeps large psi grids small
  const int stride = std::max(1, (std::max(nx, ny) + 255) / 256);
  const int mx = (nx + stride - 1) / stride, my = (ny + stride - 1) / stride;
  const double plot = 512.0, ml = 60, mb = 40, legend_w = 70;
  const double cw = plot / mx, ch = plot / my;
  const double W = ml + plot + legend_w + 40, H = plot + mb + 20;

  auto f = open_out(path);
  f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
    << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
  f << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (int bi = 0; bi < mx; ++bi)
    for (int bj = 0; bj < my; ++bj) {
      double acc = 0.0;
      int cnt = 0;
      bool any_nan = false;
      for (int i = bi * stride; i < std::min(nx, (bi + 1) * stride); ++i)
        for (int j = bj * stride; j < std::min(ny, (bj + 1) * stride); ++j) {
          double v = values[(size_t)i * ny + j];
          if (std::isfinite(v)) { acc += v; ++cnt; }
          else any_nan = true;
        }
      std::string fill;
      if (cnt == 0) fill = any_nan ? "rgb(187,187,187)" : "white";
      else fill = rgb_str(colormap((acc / cnt - vmin) / (vmax - vmin)));
      // svg y grows downward; grid j (ordinate) increases upward
      const double px = ml + bi * cw;
      const double py = 10 + plot - (bj + 1) * ch;
      f << "<rect x=\"" << f2(px) << "\" y=\"" << f2(py) << "\" width=\"" << f2(cw + 0.5)
        << "\" height=\"" << f2(ch + 0.5) << "\" fill=\"" << fill << "\"/>\n";
    }
  // legend: vertical gradient bar, max at top
  const double lx = ml + plot + 20;
  const int steps = 24;
  for (int k = 0; k < steps; ++k) {
    double t = 1.0 - double(k) / (steps - 1);
    f << "<rect x=\"" << f2(lx) << "\" y=\"" << f2(10 + k * plot / steps)
      << "\" width=\"18\" height=\"" << f2(plot / steps + 0.5) << "\" fill=\""
      << rgb_str(colormap(t)) << "\"/>\n";
  }
  f << "<text x=\"" << f2(lx + 24) << "\" y=\"22\" font-size=\"12\">" << sig6(vmax)
    << "</text>\n";
  f << "<text x=\"" << f2(lx + 24) << "\" y=\"" << f2(10 + plot) << "\" font-size=\"12\">"
    << sig6(vmin) << "</text>\n";
  // axis extents
  f << "<text x=\"" << f2(ml) << "\" y=\"" << f2(H - 12)
    << "\" text-anchor=\"middle\" font-size=\"12\">" << sig6(x0) << "</text>\n";
  f << "<text x=\"" << f2(ml + plot) << "\" y=\"" << f2(H - 12)
    << "\" text-anchor=\"middle\" font-size=\"12\">" << sig6(x1) << "</text>\n";
  f << "<text x=\"" << f2(ml - 8) << "\" y=\"" << f2(10 + plot)
    << "\" text-anchor=\"end\" font-size=\"12\">" << sig6(y0) << "</text>\n";
  f << "<text x=\"" << f2(ml - 8) << "\" y=\"22\" text-anchor=\"end\" font-size=\"12\">"
    << sig6(y1) << "</text>\n";
  f << "</svg>\n";
}

}  // namespace hitchin
