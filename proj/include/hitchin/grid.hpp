#pragma once
#include <complex>
#include <stdexcept>

namespace hitchin {

// Uniform square [-L, L]^2, N nodes per side (N odd so z=0 is a node).
// Flattened index i*N + j for x_i = -L + i h, y_j = -L + j h, z = x + i y.
struct GridSpec {
  double L = 6.0;
  int N = 513;

  double h() const { return 2.0 * L / double(N - 1); }
  double x(int i) const { return -L + h() * double(i); }
  std::complex<double> z(int i, int j) const { return {x(i), x(j)}; }
  int idx(int i, int j) const { return i * N + j; }
  int nodes() const { return N * N; }
  bool boundary(int i, int j) const { return i == 0 || j == 0 || i == N - 1 || j == N - 1; }

  // trapezoid quadrature weight (product of per-axis 1/2 end weights)
  double trap(int i, int j) const {
    double w = 1.0;
    if (i == 0 || i == N - 1) w *= 0.5;
    if (j == 0 || j == N - 1) w *= 0.5;
    return w;
  }

  void validate() const {
    if (N < 5 || N % 2 == 0) throw std::invalid_argument("GridSpec: N must be odd and >= 5");
    if (L <= 0.0) throw std::invalid_argument("GridSpec: L must be positive");
  }
  bool operator==(const GridSpec& o) const { return L == o.L && N == o.N; }
};

// default domain heuristic: margin 3 beyond the root cores
inline double default_L(double max_root_radius) {
  double L = 2.0 * max_root_radius + 3.0;
  return L < 6.0 ? 6.0 : L;
}

}  // namespace hitchin
