#pragma once

// Command-line front end. run() is the whole program; main() only forwards
// argv and the standard streams.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "surf4/errors.hpp"
#include "surf4/forms.hpp"
#include "surf4/grid.hpp"
#include "surf4/io.hpp"
#include "surf4/msc.hpp"
#include "surf4/octet.hpp"
#include "surf4/rotational.hpp"
#include "surf4/surface.hpp"

namespace surf4::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2, kDomain = 3 };

/// Bad or missing arguments; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Tolerances {
  double pipeline = 1e-6;
  double octet = 1e-5;
  double relations = 1e-8;
  double residual = 1e-12;
  double msc = 1e-10;
  double classify = kClassificationTol;
};

struct Options {
  std::string f, g;
  double alpha = 1.0, beta = 2.0;
  double c = 1.0;
  int eps = 1;
  std::string u = "0.5:2:16";
  std::string v = "0:6:7";
  std::string out;
  std::string pipeline = "generic";
  std::string jets = "analytic";
  std::string projection = "drop4";
  bool closed = false;
  std::string quantity;
  std::string point;
  unsigned threads = 0;
  Tolerances tol;
  std::optional<double> tol_all;
};

/// Options that select the surface, kept so we can tell which were given.
struct SourceFlags {
  CLI::Option* f = nullptr;
  CLI::Option* g = nullptr;
  CLI::Option* c = nullptr;
  CLI::Option* eps = nullptr;
};

struct Source {
  RotationalSurface surface;
  std::optional<MscParams> msc;
};

namespace detail {

inline std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

inline std::string at(double u, double v) { return "(u, v) = (" + num(u) + ", " + num(v) + ")"; }

/// Runs fn, attaching the grid point to any geometry error.
template <class Fn>
auto at_point(double u, double v, Fn fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw DomainError(std::string(e.what()) + " at " + at(u, v));
  }
}

inline Source resolve(const Options& o, const SourceFlags& flags, bool msc_default = false) {
  const bool expr = flags.f->count() > 0 || flags.g->count() > 0;
  const bool msc = msc_default || flags.c->count() > 0 || flags.eps->count() > 0;
  if (expr && msc) throw UsageError("give either --f/--g or --c/--eps, not both");
  if (!expr && !msc) throw UsageError("no surface given: use --f and --g, or --c and --eps");
  try {
    if (expr) {
      if (flags.f->count() == 0) throw UsageError("missing --f");
      if (flags.g->count() == 0) throw UsageError("missing --g");
      return {RotationalSurface(Profile::parse(o.f), Profile::parse(o.g), o.alpha, o.beta), std::nullopt};
    }
    const MscParams p{o.c, o.alpha, o.beta, o.eps};
    p.validate();
    return {msc_surface(p), p};
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

inline GridSpec grid(const Options& o) {
  try {
    return {parse_range(o.u), parse_range(o.v)};
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

inline Tolerances tolerances(const Options& o) {
  Tolerances t = o.tol;
  if (o.tol_all) t.pipeline = t.octet = t.relations = t.residual = t.msc = *o.tol_all;
  return t;
}

inline InvariantRecord closed_record(const RotationalSurface& s, double u, double tol) {
  const ClosedForms cf = closed_forms_at(s, u);
  const InvariantTriple t = closed_invariants_at(s, u);
  InvariantRecord r{};
  r.E = cf.ff.E;
  r.F = cf.ff.F;
  r.G = cf.ff.G;
  r.L = cf.sf.L;
  r.M = cf.sf.M;
  r.N = cf.sf.N;
  r.k = t.k;
  r.kappa = t.kappa;
  r.K = t.K;
  r.type = classify(cf.sf, t.k, t.kappa, tol);
  return r;
}

inline Jet2 jet_at(const RotationalSurface& s, double u, double v, bool fd) {
  return fd ? fd_jet2(s, u, v) : analytic_jet2(s, u, v);
}

inline InvariantRecord point_record(const RotationalSurface& s, double u, double v, const Options& o, double tol) {
  if (o.pipeline == "closed") return closed_record(s, u, tol);
  return evaluate_generic(jet_at(s, u, v, o.jets == "fd"), tol).rec;
}

inline FrenetOctet generic_octet(const RotationalSurface& s, double u, double v) {
  auto jet = [&](double uu, double vv) { return analytic_jet2(s, uu, vv); };
  return octet_generic(jet(u, v), make_stencil(jet, u, v));
}

/// Evaluates fn(u, v) over the grid, rows in parallel, u-major order.
template <class Fn>
auto over_grid(const GridSpec& g, unsigned threads, Fn fn) {
  const std::vector<double> us = g.u.values(), vs = g.v.values();
  using R = decltype(fn(0.0, 0.0));
  auto rows = parallel_map(
      us.size(),
      [&](std::size_t i) {
        std::vector<R> row;
        row.reserve(vs.size());
        for (double v : vs) row.push_back(at_point(us[i], v, [&] { return fn(us[i], v); }));
        return row;
      },
      threads);
  return rows;
}

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw UsageError("cannot open output file '" + path + "'");
      os_ = &file_;
    }
  }
  std::ostream& stream() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

// ---------------------------------------------------------------------------

inline int cmd_invariants(const Options& o, const SourceFlags& flags, std::ostream& out) {
  const Source src = resolve(o, flags);
  const GridSpec g = grid(o);
  const double tol = tolerances(o).classify;
  const auto rows = over_grid(g, o.threads, [&](double u, double v) {
    return io::InvariantRow{u, v, point_record(src.surface, u, v, o, tol)};
  });
  std::vector<io::InvariantRow> flat;
  for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
  Output dst(o.out, out);
  io::write_invariants_csv(dst.stream(), flat);
  return kOk;
}

struct Check {
  std::string name;
  double tol = 0.0;
  bool applicable = true;
  std::string why_not;
  double worst = 0.0;
  double wu = 0.0, wv = 0.0;
  int points = 0;

  void add(double dev, double u, double v) {
    const bool nan_first = std::isnan(dev) && !std::isnan(worst);
    if (points == 0 || nan_first || dev > worst) {
      worst = dev;
      wu = u;
      wv = v;
    }
    ++points;
  }
  bool passed() const { return !applicable || (points > 0 && worst <= tol); }
};

inline double scaled_dev(double a, double b) { return std::fabs(a - b) / std::max(1.0, std::fabs(b)); }

struct PointChecks {
  double pipeline = 0.0;
  std::optional<double> octet;
  std::optional<double> relations;
  double residual = 0.0;
  double msc = 0.0;
};

inline int cmd_verify(const Options& o, const SourceFlags& flags, std::ostream& out) {
  const Source src = resolve(o, flags);
  const GridSpec g = grid(o);
  const Tolerances tol = tolerances(o);
  const RotationalSurface& s = src.surface;

  const auto rows = over_grid(g, o.threads, [&](double u, double v) {
    PointChecks pc;
    const ClosedForms cf = closed_forms_at(s, u);
    const InvariantTriple ct = closed_invariants_at(s, u);
    const GenericPoint fd = evaluate_generic(fd_jet2(s, u, v), tol.classify);
    const double closed_vals[] = {cf.ff.E, cf.ff.F, cf.ff.G, cf.sf.L, cf.sf.M, cf.sf.N, ct.k, ct.kappa, ct.K};
    const double generic_vals[] = {fd.ff.E, fd.ff.F, fd.ff.G, fd.sf.L,    fd.sf.M,
                                   fd.sf.N, fd.rec.k, fd.rec.kappa, fd.rec.K};
    for (int i = 0; i < 9; ++i) pc.pipeline = std::max(pc.pipeline, scaled_dev(generic_vals[i], closed_vals[i]));

    const GenericPoint exact = evaluate_generic(analytic_jet2(s, u, v), tol.classify);
    try {
      const FrenetOctet oc = generic_octet(s, u, v);
      pc.octet = octet_deviation(oc, closed_octet_at(s, u));
      const InvariantTriple r = relations_22(oc);
      pc.relations = std::max({scaled_dev(r.k, exact.rec.k), scaled_dev(r.kappa, exact.rec.kappa),
                               scaled_dev(r.K, exact.rec.K)});
    } catch (const DegenerateError&) {
      // b is undefined where both normal curvature vectors vanish.
    }
    if (src.msc) {
      const double p = src.msc->p();
      pc.residual = std::fabs(msc_residual(s, u, src.msc->eps)) / (1.0 + std::pow(std::fabs(u), std::fabs(p) + 1.0));
      const double scale = minimality_scale(exact.rec);
      pc.msc = std::max(std::fabs(exact.rec.kappa * exact.rec.kappa - exact.rec.k),
                        std::fabs(exact.rec.K * exact.rec.K - exact.rec.kappa * exact.rec.kappa)) /
               scale;
    }
    return pc;
  });

  Check pipeline{"pipeline", tol.pipeline};
  Check octet{"octet", tol.octet};
  Check relations{"relations", tol.relations};
  Check residual{"ode-residual", tol.residual};
  Check msc{"superconformal", tol.msc};
  if (!src.msc) {
    residual.applicable = msc.applicable = false;
    residual.why_not = msc.why_not = "surface not given by --c/--eps";
  }
  const std::vector<double> us = g.u.values(), vs = g.v.values();
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      const PointChecks& pc = rows[i][j];
      const double u = us[i], v = vs[j];
      pipeline.add(pc.pipeline, u, v);
      if (pc.octet) octet.add(*pc.octet, u, v);
      if (pc.relations) relations.add(*pc.relations, u, v);
      if (src.msc) {
        residual.add(pc.residual, u, v);
        msc.add(pc.msc, u, v);
      }
    }
  if (octet.points == 0) {
    octet.applicable = relations.applicable = false;
    octet.why_not = relations.why_not = "frame vector b undefined at every point";
  }

  Output dst(o.out, out);
  std::ostream& os = dst.stream();
  std::vector<std::string> failed;
  for (const Check* c : {&pipeline, &octet, &relations, &residual, &msc}) {
    os << c->name << ": ";
    if (!c->applicable) {
      os << "n/a (" << c->why_not << ")\n";
      continue;
    }
    os << "max deviation " << num(c->worst) << " at " << at(c->wu, c->wv) << ", tolerance " << num(c->tol)
       << ", " << c->points << " points: " << (c->passed() ? "PASS" : "FAIL") << '\n';
    if (!c->passed()) failed.push_back(c->name);
  }
  if (failed.empty()) {
    os << "verify: all checks passed\n";
    return kOk;
  }
  os << "verify: FAILED";
  for (const auto& n : failed) os << ' ' << n;
  os << '\n';
  return kCheckFailed;
}

inline int cmd_msc(const Options& o, const SourceFlags& flags, std::ostream& out, std::ostream& err) {
  const Source src = resolve(o, flags, true);
  const MscParams& p = *src.msc;
  const GridSpec g = grid(o);
  const Tolerances tol = tolerances(o);
  if (p.degenerate()) err << "warning: c = 0 gives g = 0, a flat plane; the conditions hold trivially\n";

  struct Row {
    io::InvariantRow inv;
    bool minimal;
    bool superconformal;
  };
  const auto rows = over_grid(g, o.threads, [&](double u, double v) {
    const GenericPoint pt = evaluate_generic(analytic_jet2(src.surface, u, v), tol.classify);
    const bool ode = std::fabs(msc_residual(src.surface, u, p.eps)) <=
                     tol.residual * (1.0 + std::pow(u, std::fabs(p.p()) + 1.0));
    return Row{{u, v, pt.rec}, is_minimal(pt.rec, tol.msc), ode && is_superconformal(pt.rec, tol.msc)};
  });

  Output dst(o.out, out);
  std::ostream& report = o.out.empty() ? err : out;
  report << "profile: " << src.surface.g().text() << '\n';
  std::ostream& csv = dst.stream();
  csv << io::kInvariantsHeader << ",minimal,superconformal\n";
  int passed = 0, total = 0;
  for (const auto& row : rows)
    for (const Row& r : row) {
      io::write_invariant_fields(csv, r.inv);
      csv << ',' << (r.minimal ? "true" : "false") << ',' << (r.superconformal ? "true" : "false") << '\n';
      passed += r.superconformal ? 1 : 0;
      ++total;
    }
  report << "minimal super-conformal at " << passed << " of " << total << " points\n";
  return passed == total ? kOk : kCheckFailed;
}

inline int cmd_export(const Options& o, const SourceFlags& flags, std::ostream& out) {
  const Source src = resolve(o, flags);
  const GridSpec g = grid(o);
  static const std::map<std::string, int> drops{{"drop1", 0}, {"drop2", 1}, {"drop3", 2}, {"drop4", 3}};
  const int drop = drops.at(o.projection);
  const auto X = src.surface.map();
  const auto rows = over_grid(g, o.threads, [&](double u, double v) {
    src.surface.meridian_at(u);
    const Vec4 p = X(u, v);
    if (!is_finite(p)) throw DomainError("non-finite vertex");
    return p;
  });
  Output dst(o.out, out);
  io::write_obj(dst.stream(), rows, drop, o.closed);
  return kOk;
}

inline double octet_quantity(const FrenetOctet& oc, const std::string& q) {
  if (q == "nu1") return oc.nu1;
  if (q == "nu2") return oc.nu2;
  if (q == "mu") return oc.mu;
  if (q == "gamma2") return oc.gamma2;
  return oc.beta2;
}

inline int cmd_plot(const Options& o, const SourceFlags& flags, std::ostream& out) {
  const Source src = resolve(o, flags);
  const RotationalSurface& s = src.surface;
  const double tol = tolerances(o).classify;
  Output dst(o.out, out);
  if (o.quantity == "ellipse") {
    if (o.point.empty()) throw UsageError("plot ellipse needs --point u,v");
    const auto comma = o.point.find(',');
    if (comma == std::string::npos) throw UsageError("--point must look like u,v");
    double u = 0.0, v = 0.0;
    try {
      u = surf4::detail::parse_real(std::string_view(o.point).substr(0, comma), "point u");
      v = surf4::detail::parse_real(std::string_view(o.point).substr(comma + 1), "point v");
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    const GenericPoint pt = at_point(u, v, [&] { return evaluate_generic(analytic_jet2(s, u, v), tol); });
    const auto samples = ellipse_samples(pt.ff, pt.ct, pt.normals.e1, pt.normals.e2, 96);
    std::vector<std::array<double, 2>> xy;
    for (const Vec4& w : samples) xy.push_back({dot(w, pt.normals.e1), dot(w, pt.normals.e2)});
    const CircleTest c = is_circle(samples, 1e-10);
    io::write_ellipse_plot(dst.stream(), xy, {dot(c.centroid, pt.normals.e1), dot(c.centroid, pt.normals.e2)},
                           "normal curvature ellipse at " + at(u, v));
    return kOk;
  }
  const GridSpec g = grid(o);
  const std::vector<double> us = g.u.values();
  const auto ys = parallel_map(
      us.size(),
      [&](std::size_t i) {
        const double u = us[i];
        return at_point(u, 0.0, [&] {
          if (o.quantity == "k" || o.quantity == "kappa" || o.quantity == "K") {
            const InvariantTriple t = closed_invariants_at(s, u);
            return o.quantity == "k" ? t.k : o.quantity == "kappa" ? t.kappa : t.K;
          }
          return octet_quantity(closed_octet_at(s, u), o.quantity);
        });
      },
      o.threads);
  io::write_line_plot(dst.stream(), us, ys, o.quantity + " along the meridian", "u");
  return kOk;
}

inline int cmd_octet(const Options& o, const SourceFlags& flags, std::ostream& out) {
  const Source src = resolve(o, flags);
  const GridSpec g = grid(o);
  const std::vector<double> us = g.u.values();
  const double v0 = g.v.min;
  const auto rows = parallel_map(
      us.size(),
      [&](std::size_t i) {
        const double u = us[i];
        return at_point(u, v0, [&] {
          return io::OctetRow{u, o.pipeline == "closed" ? closed_octet_at(src.surface, u)
                                                        : generic_octet(src.surface, u, v0)};
        });
      },
      o.threads);
  Output dst(o.out, out);
  io::write_octet_csv(dst.stream(), rows);
  return kOk;
}

inline SourceFlags add_surface_options(CLI::App* cmd, Options& o) {
  SourceFlags s;
  s.f = cmd->add_option("--f", o.f, "first meridian coordinate f(u)");
  s.g = cmd->add_option("--g", o.g, "second meridian coordinate g(u)");
  cmd->add_option("--alpha", o.alpha, "rotation speed in the first plane")->capture_default_str();
  cmd->add_option("--beta", o.beta, "rotation speed in the second plane")->capture_default_str();
  s.c = cmd->add_option("--c", o.c, "minimal super-conformal family: profile constant")->capture_default_str();
  s.eps = cmd->add_option("--eps", o.eps, "minimal super-conformal family: sign +1 or -1")
              ->check(CLI::IsMember({1, -1}))
              ->capture_default_str();
  return s;
}

inline void add_grid_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--u", o.u, "u grid as min:max:count")->capture_default_str();
  cmd->add_option("--v", o.v, "v grid as min:max:count")->capture_default_str();
  cmd->add_option("--threads", o.threads, "worker threads (0: all cores)");
}

inline void add_tolerance_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--tol-pipeline", o.tol.pipeline, "closed vs finite-difference forms")->capture_default_str();
  cmd->add_option("--tol-octet", o.tol.octet, "closed vs generic octet")->capture_default_str();
  cmd->add_option("--tol-relations", o.tol.relations, "octet relations vs forms")->capture_default_str();
  cmd->add_option("--tol-residual", o.tol.residual, "scaled ODE residual")->capture_default_str();
  cmd->add_option("--tol-msc", o.tol.msc, "kappa^2 - k and K^2 - kappa^2, scaled")->capture_default_str();
  cmd->add_option("--tol-classify", o.tol.classify, "point classification threshold")->capture_default_str();
  cmd->add_option("--tol", o.tol_all, "override every check tolerance");
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  using namespace detail;
  Options o;
  CLI::App app{"Invariants of rotational surfaces in R^4", "surf4"};
  app.require_subcommand(1);

  auto* inv = app.add_subcommand("invariants", "k, kappa, K and point type over a grid (CSV)");
  const SourceFlags inv_flags = add_surface_options(inv, o);
  add_grid_options(inv, o);
  add_tolerance_options(inv, o);
  inv->add_option("--pipeline", o.pipeline, "closed or generic")
      ->check(CLI::IsMember({"closed", "generic"}))
      ->capture_default_str();
  inv->add_option("--jets", o.jets, "jets for the generic pipeline: analytic or fd")
      ->check(CLI::IsMember({"analytic", "fd"}))
      ->capture_default_str();
  inv->add_option("--out", o.out, "output file (default stdout)");

  auto* ver = app.add_subcommand("verify", "cross-check closed forms, generic pipeline and relations");
  const SourceFlags ver_flags = add_surface_options(ver, o);
  add_grid_options(ver, o);
  add_tolerance_options(ver, o);
  ver->add_option("--out", o.out, "report file (default stdout)");

  auto* msc = app.add_subcommand("msc", "generate and check a minimal super-conformal surface");
  const SourceFlags msc_flags = add_surface_options(msc, o);
  add_grid_options(msc, o);
  add_tolerance_options(msc, o);
  msc->add_option("--out", o.out, "CSV file (default stdout, report on stderr)");

  auto* exp = app.add_subcommand("export", "OBJ mesh of a 3D projection");
  const SourceFlags exp_flags = add_surface_options(exp, o);
  add_grid_options(exp, o);
  exp->add_option("--projection", o.projection, "coordinate to drop")
      ->check(CLI::IsMember({"drop1", "drop2", "drop3", "drop4"}))
      ->capture_default_str();
  exp->add_flag("--closed", o.closed, "join the last v column to the first");
  exp->add_option("--out", o.out, "OBJ file (default stdout)");

  auto* plot = app.add_subcommand("plot", "SVG plot of a quantity along u, or of the normal curvature ellipse");
  const SourceFlags plot_flags = add_surface_options(plot, o);
  add_grid_options(plot, o);
  plot->add_option("--quantity", o.quantity, "k, kappa, K, nu1, nu2, mu, gamma2, beta2 or ellipse")
      ->required()
      ->check(CLI::IsMember({"k", "kappa", "K", "nu1", "nu2", "mu", "gamma2", "beta2", "ellipse"}));
  plot->add_option("--point", o.point, "u,v for the ellipse plot");
  plot->add_option("--out", o.out, "SVG file (default stdout)");

  auto* oct = app.add_subcommand("octet", "the eight frame invariants along u (CSV)");
  const SourceFlags oct_flags = add_surface_options(oct, o);
  add_grid_options(oct, o);
  oct->add_option("--pipeline", o.pipeline, "closed or generic")
      ->check(CLI::IsMember({"closed", "generic"}))
      ->default_val("closed");
  oct->add_option("--out", o.out, "CSV file (default stdout)");

  auto usage = [&]() -> std::string {
    for (CLI::App* sub : app.get_subcommands()) return sub->help();
    return app.help();
  };

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << usage();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << usage();
    return kUsage;
  }

  try {
    if (app.got_subcommand(inv)) return cmd_invariants(o, inv_flags, out);
    if (app.got_subcommand(ver)) return cmd_verify(o, ver_flags, out);
    if (app.got_subcommand(msc)) return cmd_msc(o, msc_flags, out, err);
    if (app.got_subcommand(exp)) return cmd_export(o, exp_flags, out);
    if (app.got_subcommand(plot)) return cmd_plot(o, plot_flags, out);
    if (app.got_subcommand(oct)) return cmd_octet(o, oct_flags, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << usage();
    return kUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kDomain;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

/// Convenience overload taking the arguments after the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"surf4"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace surf4::cli
