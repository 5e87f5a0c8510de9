#pragma once

// Closed-form geometry of the general rotational surface
//   z(u, v) = (f cos(alpha v), f sin(alpha v), g cos(beta v), g sin(beta v)).
// Every quantity here is independent of v. Expressions follow the order of
// operations of their standard printed form so round-off is reproducible.

#include <array>
#include <cmath>
#include <stdexcept>

#include "surf4/errors.hpp"
#include "surf4/forms.hpp"
#include "surf4/octet.hpp"
#include "surf4/surface.hpp"
#include "surf4/vec4.hpp"

namespace surf4 {

struct ClosedForms {
  FirstForm ff;
  SecondTensor ct;  // in the frame n1, n2 below
  SecondForm sf;
};

/// The orthonormal normal frame
///   n1 = (g' cos av, g' sin av, -f' cos bv, -f' sin bv) / sqrt(f'^2 + g'^2)
///   n2 = (-b g sin av, b g cos av, a f sin bv, -a f cos bv) / sqrt(a^2 f^2 + b^2 g^2)
/// in which closed_forms_at expresses the second fundamental tensor.
inline NormalFrame rotational_normals(const RotationalSurface& s, double u, double v) {
  const auto m = s.meridian_at(u);
  const double f = m.f.value, fp = m.f.d1, g = m.g.value, gp = m.g.d1;
  const double a = s.alpha(), b = s.beta();
  const double ca = std::cos(a * v), sa = std::sin(a * v);
  const double cb = std::cos(b * v), sb = std::sin(b * v);
  const double sqE = std::sqrt(fp * fp + gp * gp);
  const double sqG = std::sqrt(a * a * f * f + b * b * g * g);
  return {Vec4{gp * ca, gp * sa, -fp * cb, -fp * sb} / sqE,
          Vec4{-b * g * sa, b * g * ca, a * f * sb, -a * f * cb} / sqG};
}

inline ClosedForms closed_forms_at(const RotationalSurface& s, double u) {
  const auto m = s.meridian_at(u);
  const double f = m.f.value, fp = m.f.d1, fpp = m.f.d2;
  const double g = m.g.value, gp = m.g.d1, gpp = m.g.d2;
  const double a = s.alpha(), b = s.beta();

  ClosedForms out{};
  const double E = fp * fp + gp * gp;
  const double G = a * a * f * f + b * b * g * g;
  out.ff = {E, 0.0, G, std::sqrt(E * G)};

  out.ct.c11_1 = (gp * fpp - fp * gpp) / std::sqrt(fp * fp + gp * gp);
  out.ct.c11_2 = 0.0;
  out.ct.c12_1 = 0.0;
  out.ct.c12_2 = a * b * (g * fp - f * gp) / std::sqrt(a * a * f * f + b * b * g * g);
  out.ct.c22_1 = (b * b * g * fp - a * a * f * gp) / std::sqrt(fp * fp + gp * gp);
  out.ct.c22_2 = 0.0;

  out.sf.L = 2.0 * a * b * (g * fp - f * gp) * (gp * fpp - fp * gpp) /
             ((a * a * f * f + b * b * g * g) * (fp * fp + gp * gp));
  out.sf.M = 0.0;
  out.sf.N = -2.0 * a * b * (g * fp - f * gp) * (b * b * g * fp - a * a * f * gp) /
             ((a * a * f * f + b * b * g * g) * (fp * fp + gp * gp));
  return out;
}

inline InvariantTriple closed_invariants_at(const RotationalSurface& s, double u) {
  const auto m = s.meridian_at(u);
  const double f = m.f.value, fp = m.f.d1, fpp = m.f.d2;
  const double g = m.g.value, gp = m.g.d1, gpp = m.g.d2;
  const double a = s.alpha(), b = s.beta();

  const double G = a * a * f * f + b * b * g * g;
  const double E = fp * fp + gp * gp;
  const double twist = g * fp - f * gp;            // g f' - f g'
  const double bend = gp * fpp - fp * gpp;         // g' f'' - f' g''
  const double spin = b * b * g * fp - a * a * f * gp;  // b^2 g f' - a^2 f g'

  InvariantTriple t{};
  t.k = -4.0 * a * a * b * b * (twist * twist) * bend * spin /
        (G * G * G * (E * E * E));
  t.kappa = a * b * twist / (G * G * (E * E)) * (G * bend - E * spin);
  t.K = (G * spin * bend - a * a * b * b * E * (twist * twist)) / (G * G * (E * E));
  return t;
}

/// Octet of the rotational surface in the geometric frame {x, y, n1, n2}.
///
/// beta2 is the component of the derivative of n1 along the unit vector y,
/// <(n1)_v, n2> / sqrt(G) = a b (f f' + g g') / (sqrt(E) G).
inline FrenetOctet closed_octet_at(const RotationalSurface& s, double u) {
  const auto m = s.meridian_at(u);
  const double f = m.f.value, fp = m.f.d1, fpp = m.f.d2;
  const double g = m.g.value, gp = m.g.d1, gpp = m.g.d2;
  const double a = s.alpha(), b = s.beta();
  const double E = fp * fp + gp * gp;
  const double G = a * a * f * f + b * b * g * g;

  FrenetOctet o{};
  o.gamma1 = 0.0;
  o.gamma2 = -(a * a * f * fp + b * b * g * gp) / (std::sqrt(E) * G);
  o.nu1 = (gp * fpp - fp * gpp) / std::pow(E, 1.5);
  o.nu2 = (b * b * g * fp - a * a * f * gp) / (std::sqrt(E) * G);
  o.lambda = 0.0;
  o.mu = a * b * (g * fp - f * gp) / (std::sqrt(E) * G);
  o.beta1 = 0.0;
  o.beta2 = a * b * (f * fp + g * gp) / (std::sqrt(E) * G);
  return o;
}

// ---------------------------------------------------------------------------
// Curves on the surface

/// Frenet curvatures of a curve in R^4 measured per unit of the curve
/// parameter, i.e. the coefficients of the Frenet equations in that
/// parameter. Arc-length curvatures are these divided by `speed`.
/// `rank` is the dimension of the osculating flag that was resolved;
/// curvatures past it are reported as 0.
struct CurveCurvatures {
  double kappa = 0.0;
  double tau = 0.0;
  double sigma3 = 0.0;
  double speed = 1.0;
  int rank = 4;
};

/// Curvatures in v of the v-line (a cos(alpha v), a sin(alpha v), b cos(beta v), b sin(beta v)).
inline CurveCurvatures vline_curvatures(double a, double b, double alpha, double beta) {
  const double s2 = a * a * alpha * alpha + b * b * beta * beta;
  const double s4 = a * a * std::pow(alpha, 4) + b * b * std::pow(beta, 4);
  if (!(s2 > 0.0) || !(s4 > 0.0)) throw DegenerateError("v-line degenerates to a point");
  CurveCurvatures c;
  c.kappa = std::sqrt(s4 / s2);
  c.tau = a * b * alpha * beta * (alpha * alpha - beta * beta) / (std::sqrt(s4) * std::sqrt(s2));
  c.sigma3 = alpha * beta * std::sqrt(s2) / std::sqrt(s4);
  c.speed = std::sqrt(s2);
  return c;
}

/// First four derivatives in v of the v-line through (a, 0, b, 0).
inline std::array<Vec4, 4> vline_derivatives(double a, double b, double alpha, double beta, double v) {
  std::array<Vec4, 4> d;
  const double ca = std::cos(alpha * v), sa = std::sin(alpha * v);
  const double cb = std::cos(beta * v), sb = std::sin(beta * v);
  // d^n/dv^n of (cos, sin) cycles through (-sin, cos), (-cos, -sin), (sin, -cos), (cos, sin).
  const std::array<std::array<double, 2>, 4> ta = {{{-sa, ca}, {-ca, -sa}, {sa, -ca}, {ca, sa}}};
  const std::array<std::array<double, 2>, 4> tb = {{{-sb, cb}, {-cb, -sb}, {sb, -cb}, {cb, sb}}};
  double pa = 1.0, pb = 1.0;
  for (std::size_t n = 0; n < 4; ++n) {
    pa *= alpha;
    pb *= beta;
    d[n] = {a * pa * ta[n][0], a * pa * ta[n][1], b * pb * tb[n][0], b * pb * tb[n][1]};
  }
  return d;
}

struct MeridianCurvature {
  double curvature;
  double torsion;  // identically 0: meridians are plane curves
};

inline MeridianCurvature meridian_curvature(const RotationalSurface& s, double u) {
  const auto m = s.meridian_at(u);
  const double fp = m.f.d1, fpp = m.f.d2, gp = m.g.d1, gpp = m.g.d2;
  const double len = std::sqrt(fp * fp + gp * gp);
  return {std::fabs(gp * fpp - fp * gpp) / (len * len * len), 0.0};
}

/// Frenet curvatures from the derivatives (z', z'', z''', z'''') by
/// Gram-Schmidt on the derivative flag. With r_i the norm of the part of
/// z^(i) orthogonal to the earlier derivatives, the curvatures per unit
/// parameter are
///   kappa_i = r_(i+1) / r_i,
/// speed is r_1, and the last curvature carries the sign of
/// det(z', z'', z''', z'''').
inline CurveCurvatures curve_frenet_oracle(const std::array<Vec4, 4>& d) {
  constexpr double kRankTol = 1e-10;
  std::array<Vec4, 4> basis;
  std::array<double, 4> r{};
  int rank = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    Vec4 w = d[i];
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t j = 0; j < i; ++j) w -= dot(w, basis[j]) * basis[j];
    r[i] = norm(w);
    if (!(r[i] > kRankTol * std::max(1.0, norm(d[i])))) break;
    basis[i] = w / r[i];
    rank = static_cast<int>(i) + 1;
  }
  if (rank == 0) throw DegenerateError("curve is singular: first derivative vanishes");

  CurveCurvatures c;
  c.rank = rank;
  c.speed = r[0];
  if (rank >= 2) c.kappa = r[1] / r[0];
  if (rank >= 3) c.tau = r[2] / r[1];
  if (rank >= 4) {
    const double sign = det4(d[0], d[1], d[2], d[3]) < 0.0 ? -1.0 : 1.0;
    c.sigma3 = sign * r[3] / r[2];
  }
  return c;
}

}  // namespace surf4
