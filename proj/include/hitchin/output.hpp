#pragma once
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hitchin/elliptic.hpp"
#include "hitchin/moduli.hpp"
#include "hitchin/radial.hpp"

namespace hitchin {

// 6 significant digits, '.' decimal separator
std::string sig6(double v);

// full-precision round-trip form, for manifests
std::string full17(double v);

// flat `key = value` lines, '#' starts a comment; no sections or nesting
std::map<std::string, std::string> parse_config(const std::string& path);

// --out flag if nonempty, else $HITCHIN_OUT_DIR, else "."
std::string resolve_out_dir(const std::string& flag_value);

void ensure_dir(const std::string& dir);

// run-manifest.txt in config syntax so a run can be replayed via --config;
// the only non-parameter content is a commented timestamp
void write_manifest(const std::string& dir,
                    const std::vector<std::pair<std::string, std::string>>& params);

void write_radial_csv(const std::string& path, const RadialProfile& p);
void write_scan_csv(const std::string& path,
                    const std::vector<std::pair<double, double>>& rows);
void write_heatmap_csv(const std::string& path, const Field2D& f);
void write_surface_csv(const std::string& path, const ScanResult& scan);

// JSON-like plain-text block: extremal curvatures and peak list
std::string surface_summary_text(const ScanResult& scan);

void write_line_svg(const std::string& path, const std::vector<double>& xs,
                    const std::vector<double>& ys, const std::string& x_label,
                    const std::string& y_label);

// values row-major with ix (abscissa) outer; NaN cells gray; linear blue to
// red color map with a min/max legend
void write_grid_svg(const std::string& path, const std::vector<double>& values,
                    int nx, int ny, double x0, double x1, double y0, double y1);

}  // namespace hitchin
