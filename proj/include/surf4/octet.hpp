#pragma once

// The eight invariants of the Frenet-type derivative formulas for the
// geometric frame {x, y, b, l} of a surface in principal parameters:
//
//   x_x =         gamma1 y + nu1 b            b_x = -nu1 x - lambda y + beta1 l
//   x_y = -gamma1 x + lambda b + mu l         b_y = -lambda x - nu2 y + beta2 l
//   y_x =        -gamma2 y + lambda b + mu l  l_x =          -mu y - beta1 b
//   y_y =  gamma2 x          + nu2 b          l_y = -mu x          - beta2 b
//
// (w_x denotes the ambient derivative of w along the unit vector x.)

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "surf4/errors.hpp"
#include "surf4/forms.hpp"
#include "surf4/frame.hpp"
#include "surf4/jet.hpp"

namespace surf4 {

struct FrenetOctet {
  double gamma1, gamma2;
  double nu1, nu2;
  double lambda, mu;
  double beta1, beta2;

  std::array<double, 8> values() const { return {gamma1, gamma2, nu1, nu2, lambda, mu, beta1, beta2}; }
};

/// The octet is defined up to (b, l) -> (-b, -l), which negates
/// (nu1, nu2, lambda, mu) and fixes the rest.
inline FrenetOctet gauge_flip(const FrenetOctet& o) {
  return {o.gamma1, o.gamma2, -o.nu1, -o.nu2, -o.lambda, -o.mu, o.beta1, o.beta2};
}

/// k = -4 nu1 nu2 mu^2, kappa = (nu1 - nu2) mu, K = nu1 nu2 - (lambda^2 + mu^2).
inline InvariantTriple relations_22(const FrenetOctet& o) {
  return {-4.0 * o.nu1 * o.nu2 * o.mu * o.mu, (o.nu1 - o.nu2) * o.mu,
          o.nu1 * o.nu2 - (o.lambda * o.lambda + o.mu * o.mu)};
}

/// Largest componentwise deviation |a_i - b_i| / max(1, |b_i|), minimised
/// over the gauge flip of `a`.
inline double octet_deviation(const FrenetOctet& a, const FrenetOctet& b) {
  auto dev = [&](const FrenetOctet& x) {
    const auto xv = x.values();
    const auto bv = b.values();
    double m = 0.0;
    for (std::size_t i = 0; i < 8; ++i)
      m = std::max(m, std::fabs(xv[i] - bv[i]) / std::max(1.0, std::fabs(bv[i])));
    return m;
  };
  return std::min(dev(a), dev(gauge_flip(a)));
}

struct OctetOptions {
  /// Tolerance on |F| / sqrt(EG) and on |M| for the principal-parameter check.
  double principal_tol = 1e-6;
  /// Below this norm sigma(x,x) is treated as zero and b comes from sigma(y,y).
  double b_tol = 1e-12;
};

/// {x, y, b, l} at one point plus the unit normal curvature vectors.
struct PrincipalFrame {
  double E, G;
  Vec4 x, y, b, l;
  Vec4 sxx, sxy, syy;
};

inline PrincipalFrame principal_frame(const Jet2& jet, const OctetOptions& opts = {}) {
  const FirstForm ff = first_form(jet);
  const NormalFrame nf = gram_schmidt_normals(jet);
  const SecondForm sf = lmn(second_tensor(jet, nf.e1, nf.e2), ff.W);
  if (std::fabs(ff.F) > opts.principal_tol * std::sqrt(ff.E * ff.G) ||
      std::fabs(sf.M) > opts.principal_tol * std::max({1.0, std::fabs(sf.L), std::fabs(sf.N)})) {
    std::ostringstream os;
    os << "parameters are not principal (F = " << ff.F << ", M = " << sf.M << ")";
    throw std::invalid_argument(os.str());
  }

  const Christoffel ch = christoffel(jet);
  const Vec4 s11 = jet.zuu - ch.g11_1 * jet.zu - ch.g11_2 * jet.zv;
  const Vec4 s12 = jet.zuv - ch.g12_1 * jet.zu - ch.g12_2 * jet.zv;
  const Vec4 s22 = jet.zvv - ch.g22_1 * jet.zu - ch.g22_2 * jet.zv;

  PrincipalFrame p{};
  p.E = ff.E;
  p.G = ff.G;
  p.x = jet.zu / std::sqrt(ff.E);
  p.y = jet.zv / std::sqrt(ff.G);
  p.sxx = s11 / ff.E;
  p.sxy = s12 / std::sqrt(ff.E * ff.G);
  p.syy = s22 / ff.G;

  if (norm(p.sxx) > opts.b_tol) {
    p.b = p.sxx / norm(p.sxx);
  } else if (norm(p.syy) > opts.b_tol) {
    p.b = p.syy / norm(p.syy);
  } else {
    std::ostringstream os;
    os << "b is undefined at z = " << jet.z << ": sigma(x,x) and sigma(y,y) both vanish";
    throw DegenerateError(os.str());
  }
  const Vec4 l = complement(p.x, p.y, p.b);
  p.l = l / norm(l);
  return p;
}

/// Jets at the four neighbours (u -+ h, v) and (u, v -+ h), used to
/// differentiate the b field.
struct OctetStencil {
  Jet2 u_minus, u_plus;
  Jet2 v_minus, v_plus;
  double h;
};

inline constexpr double kOctetStep = 1e-4;

template <class JetFn>
OctetStencil make_stencil(const JetFn& jet_at, double u, double v, double h = kOctetStep) {
  return {jet_at(u - h, v), jet_at(u + h, v), jet_at(u, v - h), jet_at(u, v + h), h};
}

/// Octet from a jet in principal parameters. beta1 and beta2 use central
/// differences of b over the stencil; everything else is pointwise.
inline FrenetOctet octet_generic(const Jet2& jet, const OctetStencil& st, const OctetOptions& opts = {}) {
  const PrincipalFrame p = principal_frame(jet, opts);
  const Vec4 b_um = principal_frame(st.u_minus, opts).b;
  const Vec4 b_up = principal_frame(st.u_plus, opts).b;
  const Vec4 b_vm = principal_frame(st.v_minus, opts).b;
  const Vec4 b_vp = principal_frame(st.v_plus, opts).b;
  const Vec4 b_u = (b_up - b_um) / (2.0 * st.h);
  const Vec4 b_v = (b_vp - b_vm) / (2.0 * st.h);

  FrenetOctet o{};
  o.gamma1 = dot(jet.zuu, jet.zv) / (p.E * std::sqrt(p.G));
  o.gamma2 = dot(jet.zvv, jet.zu) / (p.G * std::sqrt(p.E));
  o.nu1 = dot(p.sxx, p.b);
  o.nu2 = dot(p.syy, p.b);
  o.lambda = dot(p.sxy, p.b);
  o.mu = dot(p.sxy, p.l);
  o.beta1 = dot(b_u, p.l) / std::sqrt(p.E);
  o.beta2 = dot(b_v, p.l) / std::sqrt(p.G);
  return o;
}

}  // namespace surf4
