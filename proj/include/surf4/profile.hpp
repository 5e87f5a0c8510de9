#pragma once

#include <limits>
#include <string>
#include <string_view>

#include "surf4/expr.hpp"

namespace surf4 {

/// Closed real interval; unbounded by default.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double x) const noexcept { return x >= lo && x <= hi; }
  bool bounded() const noexcept { return lo > -std::numeric_limits<double>::infinity() &&
                                         hi < std::numeric_limits<double>::infinity(); }
};

/// Value and first two derivatives of a profile at one point.
struct ProfileJet {
  double value;
  double d1;
  double d2;
};

/// A scalar function of u with exact symbolic first and second derivatives.
class Profile {
 public:
  explicit Profile(Expr e, Interval domain = {})
      : expr_(std::move(e)),
        d1_(differentiate(expr_)),
        d2_(differentiate(d1_)),
        domain_(domain) {}

  static Profile parse(std::string_view text, Interval domain = {}) {
    return Profile(surf4::parse(text), domain);
  }

  static Profile constant(double c) { return Profile(Expr::constant(c)); }
  static Profile identity() { return Profile(Expr::variable()); }

  const Expr& expr() const noexcept { return expr_; }
  const Expr& d1() const noexcept { return d1_; }
  const Expr& d2() const noexcept { return d2_; }
  const Interval& domain() const noexcept { return domain_; }

  double value(double u) const { return eval(expr_, u); }
  double slope(double u) const { return eval(d1_, u); }
  double second(double u) const { return eval(d2_, u); }

  ProfileJet jet(double u) const { return {value(u), slope(u), second(u)}; }

  std::string text() const { return to_string(expr_); }

 private:
  Expr expr_;
  Expr d1_;
  Expr d2_;
  Interval domain_;
};

}  // namespace surf4
