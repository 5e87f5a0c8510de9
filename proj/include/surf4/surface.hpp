#pragma once

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "surf4/errors.hpp"
#include "surf4/jet.hpp"
#include "surf4/profile.hpp"
#include "surf4/rotation.hpp"

namespace surf4 {

/// The general rotational surface
///   z(u, v) = (f cos(alpha v), f sin(alpha v), g cos(beta v), g sin(beta v))
/// with meridian (f, 0, g, 0) in a coordinate 2-plane.
class RotationalSurface {
 public:
  RotationalSurface(Profile f, Profile g, double alpha, double beta, Interval u_domain = {})
      : f_(std::move(f)), g_(std::move(g)), alpha_(alpha), beta_(beta), u_domain_(u_domain) {
    if (!(alpha > 0.0) || !(beta > 0.0))
      throw std::invalid_argument("rotation speeds alpha and beta must be positive");
    if (alpha == beta)
      throw std::invalid_argument("alpha == beta gives circular v-lines; the family requires alpha != beta");
    if (!(u_domain.lo < u_domain.hi)) throw std::invalid_argument("empty u domain");
  }

  const Profile& f() const noexcept { return f_; }
  const Profile& g() const noexcept { return g_; }
  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  const Interval& u_domain() const noexcept { return u_domain_; }

  /// The surface as a parametric map (Moore rotation of the meridian).
  MooreRotation map() const { return moore_rotation(Curve4::meridian(f_, g_), alpha_, beta_); }

  /// Profile values and derivatives at u, after the domain and regularity
  /// checks (alpha^2 f^2 + beta^2 g^2 > 0 and f'^2 + g'^2 > 0).
  struct Meridian {
    ProfileJet f;
    ProfileJet g;
  };

  Meridian meridian_at(double u) const {
    if (!u_domain_.contains(u)) {
      std::ostringstream os;
      os << "u = " << u << " outside the surface domain [" << u_domain_.lo << ", " << u_domain_.hi << "]";
      throw DomainError(os.str());
    }
    Meridian m{f_.jet(u), g_.jet(u)};
    const double G = alpha_ * alpha_ * m.f.value * m.f.value + beta_ * beta_ * m.g.value * m.g.value;
    const double E = m.f.d1 * m.f.d1 + m.g.d1 * m.g.d1;
    if (!(G > 0.0)) {
      std::ostringstream os;
      os << "alpha^2 f^2 + beta^2 g^2 = 0 at u = " << u;
      throw RegularityError(os.str());
    }
    if (!(E > 0.0)) {
      std::ostringstream os;
      os << "f'^2 + g'^2 = 0 at u = " << u;
      throw RegularityError(os.str());
    }
    return m;
  }

 private:
  Profile f_;
  Profile g_;
  double alpha_;
  double beta_;
  Interval u_domain_;
};

/// Exact 2-jet of the rotational surface from the profiles' symbolic
/// derivatives.
inline Jet2 analytic_jet2(const RotationalSurface& s, double u, double v) {
  const auto m = s.meridian_at(u);
  const double a = s.alpha(), b = s.beta();
  const double ca = std::cos(a * v), sa = std::sin(a * v);
  const double cb = std::cos(b * v), sb = std::sin(b * v);
  const auto& f = m.f;
  const auto& g = m.g;
  Jet2 j;
  j.z = {f.value * ca, f.value * sa, g.value * cb, g.value * sb};
  j.zu = {f.d1 * ca, f.d1 * sa, g.d1 * cb, g.d1 * sb};
  j.zv = {-a * f.value * sa, a * f.value * ca, -b * g.value * sb, b * g.value * cb};
  j.zuu = {f.d2 * ca, f.d2 * sa, g.d2 * cb, g.d2 * sb};
  j.zuv = {-a * f.d1 * sa, a * f.d1 * ca, -b * g.d1 * sb, b * g.d1 * cb};
  j.zvv = {-a * a * f.value * ca, -a * a * f.value * sa, -b * b * g.value * cb, -b * b * g.value * sb};
  return j;
}

/// Finite-difference 2-jet of the rotational surface, with the stencil
/// checked against the surface's u domain.
inline Jet2 fd_jet2(const RotationalSurface& s, double u, double v, FdOptions opts = {}) {
  if (!opts.u_domain && s.u_domain().bounded()) opts.u_domain = s.u_domain();
  return fd_jet2(s.map(), u, v, opts);
}

}  // namespace surf4
