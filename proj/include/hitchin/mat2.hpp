#pragma once
#include <complex>

namespace hitchin {

// Complex 2x2 matrix, row major.
struct Mat2 {
  std::complex<double> m00{}, m01{}, m10{}, m11{};

  Mat2 operator+(const Mat2& o) const { return {m00 + o.m00, m01 + o.m01, m10 + o.m10, m11 + o.m11}; }
  Mat2 operator-(const Mat2& o) const { return {m00 - o.m00, m01 - o.m01, m10 - o.m10, m11 - o.m11}; }
  Mat2 operator*(const Mat2& o) const {
    return {m00 * o.m00 + m01 * o.m10, m00 * o.m01 + m01 * o.m11,
            m10 * o.m00 + m11 * o.m10, m10 * o.m01 + m11 * o.m11};
  }
  Mat2 operator*(std::complex<double> s) const { return {m00 * s, m01 * s, m10 * s, m11 * s}; }
  Mat2 operator*(double s) const { return {m00 * s, m01 * s, m10 * s, m11 * s}; }
  Mat2& operator+=(const Mat2& o) {
    m00 += o.m00; m01 += o.m01; m10 += o.m10; m11 += o.m11;
    return *this;
  }
  Mat2 dagger() const {
    return {std::conj(m00), std::conj(m10), std::conj(m01), std::conj(m11)};
  }
  std::complex<double> det() const { return m00 * m11 - m01 * m10; }
  double norm_sq() const {  // tr(X X^dagger)
    return std::norm(m00) + std::norm(m01) + std::norm(m10) + std::norm(m11);
  }
};

inline Mat2 comm(const Mat2& a, const Mat2& b) { return a * b - b * a; }

// Re tr(A B^dagger), the real inner product underlying the L^2 metric
inline double re_tr_adagb(const Mat2& a, const Mat2& b) {
  return (a.m00 * std::conj(b.m00) + a.m01 * std::conj(b.m01) + a.m10 * std::conj(b.m10) +
          a.m11 * std::conj(b.m11))
      .real();
}

// anti-Hermitian traceless part, the su(2) channel
inline Mat2 su2_part(const Mat2& x) {
  Mat2 a = (x - x.dagger()) * 0.5;
  std::complex<double> tr = (a.m00 + a.m11) * 0.5;
  a.m00 -= tr;
  a.m11 -= tr;
  return a;
}

inline Mat2 herm_part(const Mat2& x) { return (x + x.dagger()) * 0.5; }

}  // namespace hitchin
