// Small fixed-size linear algebra for 2D kinematics and metric tensors.
#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

namespace mixlag {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline Vec2 operator*(Vec2 a, double s) { return s * a; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::sqrt(dot(a, a)); }

// 2x2 matrix, row major: [[a, b], [c, d]].
struct Mat2 {
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0;

  static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static Mat2 diag(double d1, double d2) { return {d1, 0.0, 0.0, d2}; }

  double det() const { return a * d - b * c; }
  double trace() const { return a + d; }
  Mat2 transpose() const { return {a, c, b, d}; }

  Mat2 inverse() const {
    const double dt = det();
    if (dt == 0.0 || !std::isfinite(dt))
      throw std::domain_error("Mat2::inverse: singular or non-finite matrix");
    const double s = 1.0 / dt;
    return {d * s, -b * s, -c * s, a * s};
  }

  double max_abs() const {
    return std::max(std::max(std::abs(a), std::abs(b)),
                    std::max(std::abs(c), std::abs(d)));
  }

  double asymmetry() const { return std::abs(b - c); }

  Mat2 sym() const { return {a, 0.5 * (b + c), 0.5 * (b + c), d}; }

  bool finite() const {
    return std::isfinite(a) && std::isfinite(b) && std::isfinite(c) &&
           std::isfinite(d);
  }
};

inline Mat2 operator+(const Mat2& m, const Mat2& n) {
  return {m.a + n.a, m.b + n.b, m.c + n.c, m.d + n.d};
}
inline Mat2 operator-(const Mat2& m, const Mat2& n) {
  return {m.a - n.a, m.b - n.b, m.c - n.c, m.d - n.d};
}
inline Mat2 operator*(double s, const Mat2& m) {
  return {s * m.a, s * m.b, s * m.c, s * m.d};
}
inline Mat2 operator*(const Mat2& m, const Mat2& n) {
  return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
          m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
}
inline Vec2 operator*(const Mat2& m, Vec2 v) {
  return {m.a * v.x + m.b * v.y, m.c * v.x + m.d * v.y};
}

// Symmetric 2x2 tensor stored as the upper triangle.  Used for metrics and
// dual metrics where symmetry is structural, not incidental.
struct SymTensor {
  double xx = 0.0, xy = 0.0, yy = 0.0;

  static SymTensor identity() { return {1.0, 0.0, 1.0}; }
  static SymTensor diag(double d1, double d2) { return {d1, 0.0, d2}; }
  static SymTensor from(const Mat2& m) {
    return {m.a, 0.5 * (m.b + m.c), m.d};
  }

  Mat2 mat() const { return {xx, xy, xy, yy}; }
  double det() const { return xx * yy - xy * xy; }
  double trace() const { return xx + yy; }

  SymTensor inverse() const {
    const double dt = det();
    if (dt == 0.0 || !std::isfinite(dt))
      throw std::domain_error("SymTensor::inverse: singular matrix");
    const double s = 1.0 / dt;
    return {yy * s, -xy * s, xx * s};
  }

  // Eigenvalues in ascending order (closed form for symmetric 2x2).
  std::array<double, 2> eigenvalues() const {
    const double m = 0.5 * (xx + yy);
    const double r = std::sqrt(0.25 * (xx - yy) * (xx - yy) + xy * xy);
    return {m - r, m + r};
  }

  bool positive_definite() const {
    return xx > 0.0 && det() > 0.0;
  }

  bool finite() const {
    return std::isfinite(xx) && std::isfinite(xy) && std::isfinite(yy);
  }

  // Quadratic form v^T A v.
  double quad(Vec2 v) const {
    return xx * v.x * v.x + 2.0 * xy * v.x * v.y + yy * v.y * v.y;
  }

  Vec2 apply(Vec2 v) const { return {xx * v.x + xy * v.y, xy * v.x + yy * v.y}; }
};

inline SymTensor operator+(const SymTensor& s, const SymTensor& t) {
  return {s.xx + t.xx, s.xy + t.xy, s.yy + t.yy};
}
inline SymTensor operator-(const SymTensor& s, const SymTensor& t) {
  return {s.xx - t.xx, s.xy - t.xy, s.yy - t.yy};
}
inline SymTensor operator*(double a, const SymTensor& s) {
  return {a * s.xx, a * s.xy, a * s.yy};
}

}  // namespace mixlag
