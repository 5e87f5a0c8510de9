#pragma once

#include <array>
#include <cstddef>

#include "surf4/errors.hpp"
#include "surf4/jet.hpp"
#include "surf4/vec4.hpp"

namespace surf4 {

/// Orthonormal basis {e1, e2} of the normal plane.
struct NormalFrame {
  Vec4 e1;
  Vec4 e2;
};

/// Orthonormal basis {t1, t2} of the tangent plane obtained from z_u, z_v.
struct TangentFrame {
  Vec4 t1;
  Vec4 t2;
};

namespace detail {

inline Vec4 remove_component(const Vec4& v, const Vec4& unit) { return v - dot(v, unit) * unit; }

}  // namespace detail

inline TangentFrame tangent_frame(const Jet2& jet) {
  const double E = dot(jet.zu, jet.zu);
  const double F = dot(jet.zu, jet.zv);
  const double G = dot(jet.zv, jet.zv);
  if (!(E > 0.0) || !(G > 0.0) || !(E * G - F * F > 1e-14 * E * G))
    throw DegenerateError("tangent vectors z_u, z_v are linearly dependent");
  TangentFrame t;
  t.t1 = jet.zu / std::sqrt(E);
  Vec4 r = detail::remove_component(jet.zv, t.t1);
  r = detail::remove_component(r, t.t1);
  t.t2 = r / norm(r);
  return t;
}

/// Positively oriented orthonormal normal frame: det4(z_u, z_v, e1, e2) > 0.
///
/// Seeds are standard basis vectors. The first is the one with the largest
/// residual after removing tangential components; the second is the one with
/// the largest residual after also removing the e1 component. Ties go to the
/// lowest index.
inline NormalFrame gram_schmidt_normals(const Jet2& jet) {
  const TangentFrame t = tangent_frame(jet);
  auto project_out_tangent = [&](Vec4 v) {
    for (int pass = 0; pass < 2; ++pass) {
      v = detail::remove_component(v, t.t1);
      v = detail::remove_component(v, t.t2);
    }
    return v;
  };

  std::array<Vec4, 4> residual;
  for (std::size_t i = 0; i < 4; ++i) residual[i] = project_out_tangent(Vec4::basis(i));

  auto pick_largest = [](const std::array<Vec4, 4>& vs) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < 4; ++i)
      if (norm(vs[i]) > norm(vs[best])) best = i;
    return best;
  };

  NormalFrame n;
  const std::size_t first = pick_largest(residual);
  n.e1 = residual[first] / norm(residual[first]);

  std::array<Vec4, 4> second_residual;
  for (std::size_t i = 0; i < 4; ++i) {
    Vec4 r = detail::remove_component(residual[i], n.e1);
    second_residual[i] = detail::remove_component(r, n.e1);
  }
  const std::size_t second = pick_largest(second_residual);
  const double len = norm(second_residual[second]);
  if (!(len > 1e-8)) throw DegenerateError("normal plane could not be spanned");

  Vec4 e2 = project_out_tangent(second_residual[second] / len);
  e2 = detail::remove_component(e2, n.e1);
  n.e2 = e2 / norm(e2);

  if (det4(jet.zu, jet.zv, n.e1, n.e2) < 0.0) n.e2 = -n.e2;
  return n;
}

}  // namespace surf4
