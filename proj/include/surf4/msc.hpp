#pragma once

// Minimal super-conformal members of the rotational family. With the
// meridian written as f = u, g = g(u), the surface is minimal super-conformal
// exactly when
//
//   alpha beta (g - u g') = eps (alpha^2 u g' - beta^2 g),   eps = +-1,
//
// whose solutions are g = c u^p with p = eps beta / alpha.
//
// The exponent is called p throughout; it must not be confused with the
// invariant k.

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "surf4/errors.hpp"
#include "surf4/forms.hpp"
#include "surf4/profile.hpp"
#include "surf4/surface.hpp"

namespace surf4 {

struct MscParams {
  double c = 1.0;
  double alpha = 1.0;
  double beta = 2.0;
  int eps = 1;

  double p() const noexcept { return eps * beta / alpha; }

  /// c == 0 gives g == 0: a flat plane, allowed but flagged.
  bool degenerate() const noexcept { return c == 0.0; }

  void validate() const {
    if (!(alpha > 0.0) || !(beta > 0.0)) throw std::invalid_argument("alpha and beta must be positive");
    if (alpha == beta) throw std::invalid_argument("alpha == beta is excluded from the family");
    if (eps != 1 && eps != -1) throw std::invalid_argument("eps must be +1 or -1");
    const double q = p();
    if (q == 1.0 || q == -1.0) throw std::invalid_argument("exponent p = +-1 is excluded");
  }
};

inline constexpr Interval kDefaultMscDomain{0.25, 4.0};

/// alpha beta (g - u g') - eps (alpha^2 u g' - beta^2 g); zero exactly on
/// minimal super-conformal meridians. Requires f to be the identity profile.
inline double msc_residual(const RotationalSurface& s, double u, int eps) {
  if (!s.f().expr().is_variable())
    throw std::invalid_argument("msc_residual requires the meridian f(u) = u");
  if (eps != 1 && eps != -1) throw std::invalid_argument("eps must be +1 or -1");
  const double g = s.g().value(u);
  const double gp = s.g().slope(u);
  const double a = s.alpha(), b = s.beta();
  return a * b * (g - u * gp) - eps * (a * a * u * gp - b * b * g);
}

struct ReducedInvariants {
  double nu1;
  double nu2;
  double mu;
};

/// nu1, nu2, mu for f = u in terms of g alone.
inline ReducedInvariants reduced_invariants(const RotationalSurface& s, double u) {
  if (!s.f().expr().is_variable())
    throw std::invalid_argument("reduced_invariants requires the meridian f(u) = u");
  s.meridian_at(u);  // domain and regularity
  const auto gj = s.g().jet(u);
  const double g = gj.value, gp = gj.d1, gpp = gj.d2;
  const double a = s.alpha(), b = s.beta();
  ReducedInvariants r{};
  r.nu1 = -gpp / std::pow(1.0 + gp * gp, 1.5);
  r.nu2 = (b * b * g - a * a * u * gp) / (std::sqrt(1.0 + gp * gp) * (a * a * u * u + b * b * g * g));
  r.mu = a * b * (g - u * gp) / (std::sqrt(1.0 + gp * gp) * (a * a * u * u + b * b * g * g));
  return r;
}

/// The meridian profile c u^p.
inline Profile msc_profile(const MscParams& params) {
  params.validate();
  return Profile(Expr::binary(BinaryOp::mul, Expr::constant(params.c),
                              Expr::binary(BinaryOp::pow, Expr::variable(), Expr::constant(params.p()))));
}

/// The surface (u cos(alpha v), u sin(alpha v), c u^p cos(beta v), c u^p sin(beta v)).
inline RotationalSurface msc_surface(const MscParams& params, Interval u_domain = kDefaultMscDomain) {
  if (!(u_domain.lo > 0.0)) {
    std::ostringstream os;
    os << "minimal super-conformal surfaces need u > 0; domain starts at " << u_domain.lo;
    throw DomainError(os.str());
  }
  Profile g = msc_profile(params);
  return RotationalSurface(Profile(Expr::variable(), u_domain), Profile(g.expr(), u_domain), params.alpha,
                           params.beta, u_domain);
}

/// Closed-form k, kappa, K along the family:
///   k     =  4 c^4 p^4 (1-p)^4 u^(4(p-2)) / D^6
///   kappa =  2 eps c^2 p^2 (1-p)^2 u^(2(p-2)) / D^3
///   K     = -2 c^2 p^2 (1-p)^2 u^(2(p-2)) / D^3,   D = 1 + c^2 p^2 u^(2(p-1)).
inline InvariantTriple msc_invariants(double c, double p, int eps, double u) {
  if (!(u > 0.0)) throw DomainError("msc_invariants requires u > 0");
  if (eps != 1 && eps != -1) throw std::invalid_argument("eps must be +1 or -1");
  const double D = 1.0 + c * c * p * p * std::pow(u, 2.0 * (p - 1.0));
  const double q = c * c * p * p * (1.0 - p) * (1.0 - p) * std::pow(u, 2.0 * (p - 2.0));
  InvariantTriple t{};
  t.k = 4.0 * std::pow(c, 4) * std::pow(p, 4) * std::pow(1.0 - p, 4) * std::pow(u, 4.0 * (p - 2.0)) /
        std::pow(D, 6);
  t.kappa = 2.0 * eps * q / std::pow(D, 3);
  t.K = -2.0 * q / std::pow(D, 3);
  return t;
}

inline InvariantTriple msc_invariants(const MscParams& params, double u) {
  return msc_invariants(params.c, params.p(), params.eps, u);
}

}  // namespace surf4
