#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

namespace dirac1d {

/// Dense complex 2x2 matrix, enough linear algebra for wave cascades.
struct Mat2 {
  std::complex<double> a{1.0, 0.0}, b{0.0, 0.0};  // [a b]
  std::complex<double> c{0.0, 0.0}, d{1.0, 0.0};  // [c d]

  static Mat2 identity() { return {}; }

  friend Mat2 operator*(const Mat2& L, const Mat2& R) {
    return {L.a * R.a + L.b * R.c, L.a * R.b + L.b * R.d,
            L.c * R.a + L.d * R.c, L.c * R.b + L.d * R.d};
  }

  std::complex<double> det() const { return a * d - b * c; }

  Mat2 inverse() const {
    const std::complex<double> dt = det();
    return {d / dt, -b / dt, -c / dt, a / dt};
  }

  double max_abs() const {
    return std::max(std::max(std::abs(a), std::abs(b)),
                    std::max(std::abs(c), std::abs(d)));
  }

  void scale(double s) {
    a *= s;
    b *= s;
    c *= s;
    d *= s;
  }

  /// 2-norm condition number via the closed-form singular values.
  double cond() const {
    const double t = std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d);
    const double dd = std::abs(det());
    const double disc = std::sqrt(std::max(0.0, t * t - 4.0 * dd * dd));
    const double s2 = 0.5 * (t - disc);
    if (s2 <= 0.0) return std::numeric_limits<double>::infinity();
    return std::sqrt(0.5 * (t + disc) / s2);
  }
};

}  // namespace dirac1d
