#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <ostream>

namespace surf4 {

/// A point or vector in R^4.
struct Vec4 {
  std::array<double, 4> c{};

  constexpr Vec4() = default;
  constexpr Vec4(double x1, double x2, double x3, double x4) : c{x1, x2, x3, x4} {}

  static constexpr Vec4 basis(std::size_t i) {
    Vec4 v;
    v.c[i] = 1.0;
    return v;
  }

  constexpr double& operator[](std::size_t i) { return c[i]; }
  constexpr double operator[](std::size_t i) const { return c[i]; }

  constexpr Vec4& operator+=(const Vec4& o) {
    for (std::size_t i = 0; i < 4; ++i) c[i] += o.c[i];
    return *this;
  }
  constexpr Vec4& operator-=(const Vec4& o) {
    for (std::size_t i = 0; i < 4; ++i) c[i] -= o.c[i];
    return *this;
  }
  constexpr Vec4& operator*=(double s) {
    for (auto& x : c) x *= s;
    return *this;
  }
  constexpr Vec4& operator/=(double s) {
    for (auto& x : c) x /= s;
    return *this;
  }

  friend constexpr Vec4 operator+(Vec4 a, const Vec4& b) { return a += b; }
  friend constexpr Vec4 operator-(Vec4 a, const Vec4& b) { return a -= b; }
  friend constexpr Vec4 operator-(Vec4 a) { return a *= -1.0; }
  friend constexpr Vec4 operator*(Vec4 a, double s) { return a *= s; }
  friend constexpr Vec4 operator*(double s, Vec4 a) { return a *= s; }
  friend constexpr Vec4 operator/(Vec4 a, double s) { return a /= s; }
  friend constexpr bool operator==(const Vec4&, const Vec4&) = default;

  friend std::ostream& operator<<(std::ostream& os, const Vec4& v) {
    return os << '(' << v.c[0] << ", " << v.c[1] << ", " << v.c[2] << ", " << v.c[3] << ')';
  }
};

/// Euclidean inner product, the ambient metric g.
constexpr double dot(const Vec4& a, const Vec4& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

inline double norm(const Vec4& a) { return std::sqrt(dot(a, a)); }

inline double max_abs(const Vec4& a) {
  return std::fmax(std::fmax(std::fabs(a[0]), std::fabs(a[1])),
                   std::fmax(std::fabs(a[2]), std::fabs(a[3])));
}

inline bool is_finite(const Vec4& a) {
  return std::isfinite(a[0]) && std::isfinite(a[1]) && std::isfinite(a[2]) && std::isfinite(a[3]);
}

/// Determinant of the 4x4 matrix whose rows are a, b, c, d.
constexpr double det4(const Vec4& a, const Vec4& b, const Vec4& c, const Vec4& d) {
  // Laplace expansion along the first two rows.
  auto m2 = [](const Vec4& p, const Vec4& q, int i, int j) { return p[i] * q[j] - p[j] * q[i]; };
  return m2(a, b, 0, 1) * m2(c, d, 2, 3) - m2(a, b, 0, 2) * m2(c, d, 1, 3) +
         m2(a, b, 0, 3) * m2(c, d, 1, 2) + m2(a, b, 1, 2) * m2(c, d, 0, 3) -
         m2(a, b, 1, 3) * m2(c, d, 0, 2) + m2(a, b, 2, 3) * m2(c, d, 0, 1);
}

/// The vector n with <n, x> = det4(a, b, c, x) for all x; orthogonal to
/// a, b, c and positively oriented after them.
constexpr Vec4 complement(const Vec4& a, const Vec4& b, const Vec4& c) {
  Vec4 n;
  for (std::size_t i = 0; i < 4; ++i) n[i] = det4(a, b, c, Vec4::basis(i));
  return n;
}

}  // namespace surf4
