#pragma once

#include <cmath>

#include "surf4/profile.hpp"
#include "surf4/vec4.hpp"

namespace surf4 {

/// A curve u -> (x1(u), x2(u), x3(u), x4(u)) in R^4.
struct Curve4 {
  Profile x1;
  Profile x2;
  Profile x3;
  Profile x4;

  Vec4 operator()(double u) const { return {x1.value(u), x2.value(u), x3.value(u), x4.value(u)}; }

  /// The plane meridian (f, 0, g, 0).
  static Curve4 meridian(const Profile& f, const Profile& g) {
    return {f, Profile::constant(0.0), g, Profile::constant(0.0)};
  }
};

/// Moore's general rotation of a curve: speed alpha in the x1x2-plane and
/// speed beta in the x3x4-plane.
struct MooreRotation {
  Curve4 curve;
  double alpha;
  double beta;

  Vec4 operator()(double u, double v) const {
    const Vec4 x = curve(u);
    const double ca = std::cos(alpha * v), sa = std::sin(alpha * v);
    const double cb = std::cos(beta * v), sb = std::sin(beta * v);
    return {x[0] * ca - x[1] * sa, x[0] * sa + x[1] * ca,
            x[2] * cb - x[3] * sb, x[2] * sb + x[3] * cb};
  }
};

inline MooreRotation moore_rotation(Curve4 c, double alpha, double beta) {
  return {std::move(c), alpha, beta};
}

/// Composes a map with the reflection x4 -> -x4, which reverses the ambient
/// orientation.
template <class Map>
struct Reflected {
  Map map;
  Vec4 operator()(double u, double v) const {
    Vec4 z = map(u, v);
    z[3] = -z[3];
    return z;
  }
};

template <class Map>
Reflected<Map> reflect_x4(Map m) {
  return {std::move(m)};
}

}  // namespace surf4
