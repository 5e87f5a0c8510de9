#pragma once

// Fundamental forms and curvature invariants of a surface in R^4, computed
// from a 2-jet and an orthonormal normal frame. Nothing here assumes the
// surface is rotational.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "surf4/errors.hpp"
#include "surf4/frame.hpp"
#include "surf4/jet.hpp"
#include "surf4/vec4.hpp"

namespace surf4 {

struct FirstForm {
  double E;
  double F;
  double G;
  double W;  // sqrt(EG - F^2)
};

/// Components of the second fundamental tensor in the normal frame {e1, e2}:
/// sigma(z_i, z_j) = cij_1 e1 + cij_2 e2.
struct SecondTensor {
  double c11_1, c11_2;
  double c12_1, c12_2;
  double c22_1, c22_2;
};

struct SecondForm {
  double L;
  double M;
  double N;
};

struct Christoffel {
  double g11_1, g11_2;
  double g12_1, g12_2;
  double g22_1, g22_2;
};

/// The scalar invariants k, kappa and the Gauss curvature K.
struct InvariantTriple {
  double k;
  double kappa;
  double K;
};

enum class PointType { flat, elliptic, parabolic, hyperbolic };

inline std::string_view to_string(PointType t) {
  switch (t) {
    case PointType::flat: return "flat";
    case PointType::elliptic: return "elliptic";
    case PointType::parabolic: return "parabolic";
    case PointType::hyperbolic: return "hyperbolic";
  }
  return "?";
}

struct InvariantRecord {
  double E, F, G;
  double L, M, N;
  double k;
  double kappa;
  double K;
  PointType type;
};

/// Default tolerance for flat/parabolic decisions.
inline constexpr double kClassificationTol = 1e-8;

inline FirstForm first_form(const Jet2& jet) {
  const double E = dot(jet.zu, jet.zu);
  const double F = dot(jet.zu, jet.zv);
  const double G = dot(jet.zv, jet.zv);
  const double det = E * G - F * F;
  if (!(det > 0.0)) throw DegenerateError("degenerate metric: EG - F^2 <= 0");
  return {E, F, G, std::sqrt(det)};
}

/// c_ij^k = <z_ij, e_k>. Rejects frames that are not normal to the tangent
/// plane (tolerance 1e-10, relative to |z_u|, |z_v|).
inline SecondTensor second_tensor(const Jet2& jet, const Vec4& e1, const Vec4& e2) {
  const double su = std::max(1.0, norm(jet.zu));
  const double sv = std::max(1.0, norm(jet.zv));
  for (const Vec4* e : {&e1, &e2}) {
    if (std::fabs(dot(*e, jet.zu)) > 1e-10 * su || std::fabs(dot(*e, jet.zv)) > 1e-10 * sv)
      throw std::invalid_argument("normal frame is not orthogonal to the tangent plane");
  }
  return {dot(jet.zuu, e1), dot(jet.zuu, e2), dot(jet.zuv, e1),
          dot(jet.zuv, e2), dot(jet.zvv, e1), dot(jet.zvv, e2)};
}

/// Tangential coefficients of z_uu, z_uv, z_vv in the basis {z_u, z_v}.
inline Christoffel christoffel(const Jet2& jet) {
  const FirstForm ff = first_form(jet);
  const double det = ff.E * ff.G - ff.F * ff.F;
  auto solve = [&](const Vec4& w, double& a, double& b) {
    const double p = dot(w, jet.zu), q = dot(w, jet.zv);
    a = (ff.G * p - ff.F * q) / det;
    b = (ff.E * q - ff.F * p) / det;
  };
  Christoffel ch{};
  solve(jet.zuu, ch.g11_1, ch.g11_2);
  solve(jet.zuv, ch.g12_1, ch.g12_2);
  solve(jet.zvv, ch.g22_1, ch.g22_2);
  return ch;
}

/// L, M, N from the oriented areas of the pairs of normal vectors
/// {sigma11, sigma12}, {sigma11, sigma22}, {sigma12, sigma22}.
inline SecondForm lmn(const SecondTensor& ct, double W) {
  const double d1 = ct.c11_1 * ct.c12_2 - ct.c11_2 * ct.c12_1;
  const double d2 = ct.c11_1 * ct.c22_2 - ct.c11_2 * ct.c22_1;
  const double d3 = ct.c12_1 * ct.c22_2 - ct.c12_2 * ct.c22_1;
  return {2.0 * d1 / W, d2 / W, 2.0 * d3 / W};
}

/// Gauss curvature via the Gauss equation,
/// K = (<sigma11, sigma22> - <sigma12, sigma12>) / (EG - F^2).
inline double gauss_curvature(const FirstForm& ff, const SecondTensor& ct) {
  const double det = ff.E * ff.G - ff.F * ff.F;
  if (!(det > 0.0)) throw DegenerateError("degenerate metric: EG - F^2 <= 0");
  const double num = ct.c11_1 * ct.c22_1 + ct.c11_2 * ct.c22_2 -
                     (ct.c12_1 * ct.c12_1 + ct.c12_2 * ct.c12_2);
  return num / det;
}

inline PointType classify(const SecondForm& sf, double k, double kappa, double tol = kClassificationTol) {
  const double scale = std::max({1.0, sf.L * sf.L, sf.M * sf.M, sf.N * sf.N, sf.L * sf.N});
  const double kn = k / scale;
  const double kappan = kappa / scale;
  if (kn > tol) return PointType::elliptic;
  if (kn < -tol) return PointType::hyperbolic;
  return std::fabs(kappan) > tol ? PointType::parabolic : PointType::flat;
}

/// k = (LN - M^2)/(EG - F^2), kappa = (EN + GL - 2FM)/(2(EG - F^2)); the
/// Gauss curvature is supplied by the caller.
inline InvariantRecord invariants(const FirstForm& ff, const SecondForm& sf, double K,
                                  double tol = kClassificationTol) {
  const double det = ff.E * ff.G - ff.F * ff.F;
  InvariantRecord r{};
  r.E = ff.E;
  r.F = ff.F;
  r.G = ff.G;
  r.L = sf.L;
  r.M = sf.M;
  r.N = sf.N;
  r.k = (sf.L * sf.N - sf.M * sf.M) / det;
  r.kappa = (ff.E * sf.N + ff.G * sf.L - 2.0 * ff.F * sf.M) / (2.0 * det);
  r.K = K;
  r.type = classify(sf, r.k, r.kappa, tol);
  return r;
}

/// II(a, b) = L a^2 + 2 M a b + N b^2 for the tangent a z_u + b z_v.
inline double second_form_value(const SecondForm& sf, double a, double b) {
  return sf.L * a * a + 2.0 * sf.M * a * b + sf.N * b * b;
}

/// Principal-line parametrization: F = 0 and M = 0.
inline bool is_principal_params(const FirstForm& ff, const SecondForm& sf, double tol) {
  return std::fabs(ff.F) <= tol && std::fabs(sf.M) <= tol;
}

inline double minimality_scale(const InvariantRecord& r) {
  return std::max({1.0, r.kappa * r.kappa, std::fabs(r.k), r.K * r.K});
}

/// kappa^2 - k = 0.
inline bool is_minimal(const InvariantRecord& r, double tol) {
  return std::fabs(r.kappa * r.kappa - r.k) <= tol * minimality_scale(r);
}

/// Minimal and super-conformal: kappa^2 - k = 0 and K^2 - kappa^2 = 0. Flat
/// points satisfy both trivially; callers distinguish them by `type`.
inline bool is_superconformal(const InvariantRecord& r, double tol) {
  return is_minimal(r, tol) &&
         std::fabs(r.K * r.K - r.kappa * r.kappa) <= tol * minimality_scale(r);
}

// ---------------------------------------------------------------------------
// Normal curvature vectors

/// sigma(x,x), sigma(x,y), sigma(y,y) for the orthonormal tangent pair
/// x = z_u/sqrt(E), y = unit component of z_v orthogonal to x. Stored as
/// coordinates in the normal frame {e1, e2}.
struct UnitSecondTensor {
  double xx_1, xx_2;
  double xy_1, xy_2;
  double yy_1, yy_2;
};

inline UnitSecondTensor unit_second_tensor(const FirstForm& ff, const SecondTensor& ct) {
  const double det = ff.E * ff.G - ff.F * ff.F;
  if (!(det > 0.0)) throw DegenerateError("degenerate metric: EG - F^2 <= 0");
  const double r = ff.F / ff.E;
  UnitSecondTensor s{};
  s.xx_1 = ct.c11_1 / ff.E;
  s.xx_2 = ct.c11_2 / ff.E;
  s.xy_1 = (ct.c12_1 - r * ct.c11_1) / ff.W;
  s.xy_2 = (ct.c12_2 - r * ct.c11_2) / ff.W;
  const double q = ff.E / det;
  s.yy_1 = (ct.c22_1 - 2.0 * r * ct.c12_1 + r * r * ct.c11_1) * q;
  s.yy_2 = (ct.c22_2 - 2.0 * r * ct.c12_2 + r * r * ct.c11_2) * q;
  return s;
}

/// H = (sigma(x,x) + sigma(y,y))/2 in ambient coordinates.
inline Vec4 mean_curvature_vector(const FirstForm& ff, const SecondTensor& ct, const Vec4& e1,
                                  const Vec4& e2) {
  const UnitSecondTensor s = unit_second_tensor(ff, ct);
  return 0.5 * (s.xx_1 + s.yy_1) * e1 + 0.5 * (s.xx_2 + s.yy_2) * e2;
}

/// sigma(w, w) for w = cos(psi) x + sin(psi) y at psi_j = j pi / n. The
/// angle doubles, so these n samples cover the whole ellipse once.
inline std::vector<Vec4> ellipse_samples(const FirstForm& ff, const SecondTensor& ct, const Vec4& e1,
                                         const Vec4& e2, int n) {
  if (n < 3) throw std::invalid_argument("ellipse_samples needs n >= 3");
  const UnitSecondTensor s = unit_second_tensor(ff, ct);
  const Vec4 sxx = s.xx_1 * e1 + s.xx_2 * e2;
  const Vec4 sxy = s.xy_1 * e1 + s.xy_2 * e2;
  const Vec4 syy = s.yy_1 * e1 + s.yy_2 * e2;
  const Vec4 H = 0.5 * (sxx + syy);
  const Vec4 half_diff = 0.5 * (sxx - syy);
  std::vector<Vec4> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const double psi = std::numbers::pi * j / n;
    out.push_back(H + std::cos(2.0 * psi) * half_diff + std::sin(2.0 * psi) * sxy);
  }
  return out;
}

struct CircleTest {
  bool circle;
  bool degenerate;  // all samples coincide (radius 0), as at flat points
  Vec4 centroid;
  double radius;     // mean distance to the centroid
  double deviation;  // max | |s_j - centroid| - radius |
};

inline CircleTest is_circle(const std::vector<Vec4>& samples, double tol) {
  if (samples.size() < 3) throw std::invalid_argument("is_circle needs at least 3 samples");
  Vec4 centroid;
  for (const auto& s : samples) centroid += s;
  centroid /= static_cast<double>(samples.size());
  double mean = 0.0;
  for (const auto& s : samples) mean += norm(s - centroid);
  mean /= static_cast<double>(samples.size());
  double dev = 0.0;
  for (const auto& s : samples) dev = std::max(dev, std::fabs(norm(s - centroid) - mean));
  CircleTest t{};
  t.centroid = centroid;
  t.radius = mean;
  t.deviation = dev;
  t.degenerate = mean <= tol;
  t.circle = dev <= tol * std::max(1.0, mean);
  return t;
}

// ---------------------------------------------------------------------------
// Whole pipeline at one point

struct GenericPoint {
  Jet2 jet;
  NormalFrame normals;
  FirstForm ff;
  SecondTensor ct;
  SecondForm sf;
  InvariantRecord rec;
};

inline GenericPoint evaluate_generic(const Jet2& jet, double tol = kClassificationTol) {
  GenericPoint p{};
  p.jet = jet;
  p.ff = first_form(jet);
  p.normals = gram_schmidt_normals(jet);
  p.ct = second_tensor(jet, p.normals.e1, p.normals.e2);
  p.sf = lmn(p.ct, p.ff.W);
  p.rec = invariants(p.ff, p.sf, gauss_curvature(p.ff, p.ct), tol);
  return p;
}

}  // namespace surf4
