#pragma once

// CSV, OBJ and SVG writers.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "surf4/forms.hpp"
#include "surf4/octet.hpp"
#include "surf4/vec4.hpp"

namespace surf4::io {

/// 17 significant digits, enough to round-trip any double.
inline std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline constexpr std::string_view kInvariantsHeader = "u,v,E,F,G,L,M,N,k,kappa,K,type";
inline constexpr std::string_view kOctetHeader = "u,gamma1,gamma2,nu1,nu2,lambda,mu,beta1,beta2";

struct InvariantRow {
  double u;
  double v;
  InvariantRecord rec;
};

inline void write_invariant_fields(std::ostream& os, const InvariantRow& r) {
  const auto& x = r.rec;
  os << fmt(r.u) << ',' << fmt(r.v) << ',' << fmt(x.E) << ',' << fmt(x.F) << ',' << fmt(x.G) << ','
     << fmt(x.L) << ',' << fmt(x.M) << ',' << fmt(x.N) << ',' << fmt(x.k) << ',' << fmt(x.kappa) << ','
     << fmt(x.K) << ',' << to_string(x.type);
}

inline void write_invariants_csv(std::ostream& os, const std::vector<InvariantRow>& rows) {
  os << kInvariantsHeader << '\n';
  for (const auto& r : rows) {
    write_invariant_fields(os, r);
    os << '\n';
  }
}

struct OctetRow {
  double u;
  FrenetOctet octet;
};

inline void write_octet_csv(std::ostream& os, const std::vector<OctetRow>& rows) {
  os << kOctetHeader << '\n';
  for (const auto& r : rows) {
    os << fmt(r.u);
    for (double x : r.octet.values()) os << ',' << fmt(x);
    os << '\n';
  }
}

/// Writes an nu x nv vertex grid (u-major) projected by dropping coordinate
/// `drop` (0-based), with quad faces between neighbouring rows and columns.
/// With `closed_v` the last column is joined back to the first.
inline void write_obj(std::ostream& os, const std::vector<std::vector<Vec4>>& grid, int drop, bool closed_v) {
  if (drop < 0 || drop > 3) throw std::invalid_argument("projection must drop one of the four coordinates");
  const std::size_t nu = grid.size();
  const std::size_t nv = nu ? grid[0].size() : 0;
  for (const auto& row : grid) {
    if (row.size() != nv) throw std::invalid_argument("ragged vertex grid");
    for (const Vec4& p : row) {
      os << 'v';
      for (int i = 0; i < 4; ++i)
        if (i != drop) os << ' ' << fmt(p[static_cast<std::size_t>(i)]);
      os << '\n';
    }
  }
  auto id = [nv](std::size_t i, std::size_t j) { return i * nv + j + 1; };
  const std::size_t cols = closed_v && nv > 2 ? nv : (nv ? nv - 1 : 0);
  for (std::size_t i = 0; i + 1 < nu; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      const std::size_t jn = (j + 1) % nv;
      os << "f " << id(i, j) << ' ' << id(i + 1, j) << ' ' << id(i + 1, jn) << ' ' << id(i, jn) << '\n';
    }
}

// ---------------------------------------------------------------------------
// SVG

namespace detail {

struct Frame {
  double x0, x1, y0, y1;
  static constexpr double W = 640, H = 400, ML = 80, MR = 20, MT = 40, MB = 50;

  double sx(double x) const { return ML + (x - x0) / (x1 - x0) * (W - ML - MR); }
  double sy(double y) const { return H - MB - (y - y0) / (y1 - y0) * (H - MT - MB); }
};

inline void pad(double& lo, double& hi) {
  if (!(hi > lo)) {
    const double d = std::max(1.0, std::fabs(lo)) * 0.5;
    lo -= d;
    hi += d;
    return;
  }
  const double d = 0.05 * (hi - lo);
  lo -= d;
  hi += d;
}

inline std::string short_num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

inline std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

inline void open_svg(std::ostream& os, const Frame& f, std::string_view title) {
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << Frame::W << "\" height=\""
     << Frame::H << "\" viewBox=\"0 0 " << Frame::W << ' ' << Frame::H << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << Frame::W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
     << "font-size=\"15\">" << escape(title) << "</text>\n";
  // Axes box and ticks.
  os << "<rect x=\"" << Frame::ML << "\" y=\"" << Frame::MT << "\" width=\"" << Frame::W - Frame::ML - Frame::MR
     << "\" height=\"" << Frame::H - Frame::MT - Frame::MB << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double x = f.x0 + (f.x1 - f.x0) * i / 4.0;
    const double y = f.y0 + (f.y1 - f.y0) * i / 4.0;
    os << "<text x=\"" << f.sx(x) << "\" y=\"" << Frame::H - Frame::MB + 18
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << short_num(x) << "</text>\n";
    os << "<text x=\"" << Frame::ML - 6 << "\" y=\"" << f.sy(y) + 4
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << short_num(y) << "</text>\n";
  }
}

}  // namespace detail

/// Polyline of y against x.
inline void write_line_plot(std::ostream& os, const std::vector<double>& xs, const std::vector<double>& ys,
                            std::string_view title, std::string_view xlabel) {
  if (xs.size() != ys.size() || xs.empty()) throw std::invalid_argument("plot needs matching non-empty series");
  double x0 = *std::min_element(xs.begin(), xs.end()), x1 = *std::max_element(xs.begin(), xs.end());
  double y0 = *std::min_element(ys.begin(), ys.end()), y1 = *std::max_element(ys.begin(), ys.end());
  detail::pad(x0, x1);
  detail::pad(y0, y1);
  const detail::Frame f{x0, x1, y0, y1};
  detail::open_svg(os, f, title);
  os << "<text x=\"" << detail::Frame::W / 2 << "\" y=\"" << detail::Frame::H - 10
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << detail::escape(xlabel)
     << "</text>\n";
  os << "<polyline fill=\"none\" stroke=\"#1f5fa8\" stroke-width=\"2\" points=\"";
  for (std::size_t i = 0; i < xs.size(); ++i)
    os << (i ? " " : "") << detail::short_num(f.sx(xs[i])) << ',' << detail::short_num(f.sy(ys[i]));
  os << "\"/>\n</svg>\n";
}

/// Closed curve through 2D points with the centroid and origin marked.
inline void write_ellipse_plot(std::ostream& os, const std::vector<std::array<double, 2>>& pts,
                               std::array<double, 2> centroid, std::string_view title) {
  if (pts.empty()) throw std::invalid_argument("ellipse plot needs samples");
  double r = 0.0;
  for (const auto& p : pts) r = std::max({r, std::fabs(p[0]), std::fabs(p[1])});
  if (!(r > 0.0)) r = 1.0;
  r *= 1.15;
  const detail::Frame f{-r, r, -r, r};
  detail::open_svg(os, f, title);
  os << "<line x1=\"" << f.sx(-r) << "\" y1=\"" << f.sy(0) << "\" x2=\"" << f.sx(r) << "\" y2=\"" << f.sy(0)
     << "\" stroke=\"#bbbbbb\"/>\n"
     << "<line x1=\"" << f.sx(0) << "\" y1=\"" << f.sy(-r) << "\" x2=\"" << f.sx(0) << "\" y2=\"" << f.sy(r)
     << "\" stroke=\"#bbbbbb\"/>\n";
  os << "<polygon fill=\"none\" stroke=\"#1f5fa8\" stroke-width=\"2\" points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i)
    os << (i ? " " : "") << detail::short_num(f.sx(pts[i][0])) << ',' << detail::short_num(f.sy(pts[i][1]));
  os << "\"/>\n";
  os << "<circle cx=\"" << f.sx(centroid[0]) << "\" cy=\"" << f.sy(centroid[1])
     << "\" r=\"4\" fill=\"#c0392b\"/>\n</svg>\n";
}

}  // namespace surf4::io
