#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <sstream>

#include "surf4/errors.hpp"
#include "surf4/profile.hpp"
#include "surf4/vec4.hpp"

namespace surf4 {

/// Position and first/second partial derivatives of a map (u, v) -> R^4.
struct Jet2 {
  Vec4 z;
  Vec4 zu;
  Vec4 zv;
  Vec4 zuu;
  Vec4 zuv;
  Vec4 zvv;
};

/// Type-erased parametric surface in R^4.
using SurfaceMap = std::function<Vec4(double, double)>;

struct FdOptions {
  /// Step size; <= 0 selects 1e-4 * max(1, |u|, |v|).
  double h = 0.0;
  /// Combine steps h and h/2 to cancel the O(h^2) error term.
  bool richardson = true;
  /// When set, the stencil must stay inside these parameter ranges.
  std::optional<Interval> u_domain;
  std::optional<Interval> v_domain;
};

inline double default_fd_step(double u, double v) {
  return 1e-4 * std::max({1.0, std::fabs(u), std::fabs(v)});
}

namespace detail {

// Central differences on the 3x3 stencil with spacings hu, hv.
template <class Map>
Jet2 central_jet(const Map& map, double u, double v, double hu, double hv) {
  const Vec4 z = map(u, v);
  const Vec4 zpu = map(u + hu, v), zmu = map(u - hu, v);
  const Vec4 zpv = map(u, v + hv), zmv = map(u, v - hv);
  const Vec4 zpp = map(u + hu, v + hv), zpm = map(u + hu, v - hv);
  const Vec4 zmp = map(u - hu, v + hv), zmm = map(u - hu, v - hv);
  Jet2 j;
  j.z = z;
  j.zu = (zpu - zmu) / (2.0 * hu);
  j.zv = (zpv - zmv) / (2.0 * hv);
  j.zuu = (zpu - 2.0 * z + zmu) / (hu * hu);
  j.zvv = (zpv - 2.0 * z + zmv) / (hv * hv);
  j.zuv = (zpp - zpm - zmp + zmm) / (4.0 * hu * hv);
  return j;
}

// Step actually realised in floating point: (x + h) - x.
inline double representable_step(double x, double h) {
  const double s = (x + h) - x;
  return s > 0.0 ? s : h;
}

}  // namespace detail

/// Finite-difference 2-jet of `map` at (u, v). With Richardson extrapolation
/// the stencil is 5x5 (offsets 0, +-h/2, +-h) and the error is O(h^4).
template <class Map>
Jet2 fd_jet2(const Map& map, double u, double v, const FdOptions& opts = {}) {
  const double h = opts.h > 0.0 ? opts.h : default_fd_step(u, v);
  if (opts.u_domain && !(opts.u_domain->contains(u - h) && opts.u_domain->contains(u + h))) {
    std::ostringstream os;
    os << "finite-difference stencil [" << u - h << ", " << u + h << "] leaves the u domain ["
       << opts.u_domain->lo << ", " << opts.u_domain->hi << "]";
    throw StencilError(os.str());
  }
  if (opts.v_domain && !(opts.v_domain->contains(v - h) && opts.v_domain->contains(v + h))) {
    std::ostringstream os;
    os << "finite-difference stencil [" << v - h << ", " << v + h << "] leaves the v domain";
    throw StencilError(os.str());
  }

  const double hu = detail::representable_step(u, h);
  const double hv = detail::representable_step(v, h);
  const Jet2 coarse = detail::central_jet(map, u, v, hu, hv);
  if (!opts.richardson) return coarse;

  const Jet2 fine = detail::central_jet(map, u, v, hu / 2.0, hv / 2.0);
  auto extrapolate = [](const Vec4& c, const Vec4& f) { return f + (f - c) / 3.0; };
  Jet2 j;
  j.z = fine.z;
  j.zu = extrapolate(coarse.zu, fine.zu);
  j.zv = extrapolate(coarse.zv, fine.zv);
  j.zuu = extrapolate(coarse.zuu, fine.zuu);
  j.zuv = extrapolate(coarse.zuv, fine.zuv);
  j.zvv = extrapolate(coarse.zvv, fine.zvv);
  return j;
}

}  // namespace surf4
