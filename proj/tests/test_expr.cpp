#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "surf4/expr.hpp"
#include "surf4/profile.hpp"
#include "test_support.hpp"

using namespace surf4;
using surf4::testing::central_difference;

TEST(Parse, Variable) {
  const Expr e = parse("u");
  EXPECT_TRUE(e.is_variable());
}

TEST(Parse, PowerOfVariable) {
  const Expr e = parse("u^2");
  const auto* b = e.as<BinaryNode>();
  ASSERT_NE(b, nullptr);
  EXPECT_EQ(b->op, BinaryOp::pow);
  EXPECT_TRUE(b->lhs.is_variable());
  EXPECT_TRUE(b->rhs.is_constant(2.0));
}

TEST(Parse, ScaledSquareRoot) {
  const Expr expected = Expr::binary(BinaryOp::mul, Expr::constant(2.0),
                                     Expr::binary(BinaryOp::pow, Expr::variable(), Expr::constant(0.5)));
  EXPECT_EQ(parse("2*u^0.5"), expected);
}

TEST(Parse, Precedence) {
  EXPECT_DOUBLE_EQ(eval(parse("-u^2"), 3.0), -9.0);
  EXPECT_DOUBLE_EQ(eval(parse("-2^2"), 0.0), -4.0);
  EXPECT_DOUBLE_EQ(eval(parse("2^3^2"), 0.0), 512.0);
  EXPECT_DOUBLE_EQ(eval(parse("1 + 2*3 - 4/2"), 0.0), 5.0);
  EXPECT_DOUBLE_EQ(eval(parse("(1 + 2)*3"), 0.0), 9.0);
  EXPECT_DOUBLE_EQ(eval(parse("-u*u"), 3.0), -9.0);
  EXPECT_DOUBLE_EQ(eval(parse("u^-1"), 4.0), 0.25);
  EXPECT_DOUBLE_EQ(eval(parse("8 - -2"), 0.0), 10.0);
}

TEST(Parse, NumberForms) {
  EXPECT_DOUBLE_EQ(eval(parse("1e-3"), 0.0), 1e-3);
  EXPECT_DOUBLE_EQ(eval(parse("2.5E+1"), 0.0), 25.0);
  EXPECT_DOUBLE_EQ(eval(parse(".5"), 0.0), 0.5);
  EXPECT_DOUBLE_EQ(eval(parse("3."), 0.0), 3.0);
}

TEST(Parse, Functions) {
  EXPECT_DOUBLE_EQ(eval(parse("sin(u)"), 0.5), std::sin(0.5));
  EXPECT_DOUBLE_EQ(eval(parse("cos(u)"), 0.5), std::cos(0.5));
  EXPECT_DOUBLE_EQ(eval(parse("exp(u)"), 0.5), std::exp(0.5));
  EXPECT_DOUBLE_EQ(eval(parse("log(u)"), 0.5), std::log(0.5));
  EXPECT_DOUBLE_EQ(eval(parse("sqrt( u )"), 0.5), std::sqrt(0.5));
}

TEST(Parse, NegativeBaseIntegerPowerIsExact) {
  EXPECT_EQ(eval(parse("u^3"), -2.0), -8.0);
  EXPECT_EQ(eval(parse("(-2)^3"), 0.0), -8.0);
  EXPECT_EQ(eval(parse("u^-2"), -2.0), 0.25);
}

TEST(Parse, Errors) {
  try {
    parse("");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 0u);
  }
  try {
    parse("   ");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 0u);
  }
  try {
    parse("2*x");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 2u);
    EXPECT_NE(std::string(e.what()).find("unknown identifier"), std::string::npos);
  }
  try {
    parse("u +");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 3u);
  }
  try {
    parse("sin(u");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 5u);
  }
  EXPECT_THROW(parse("u u"), ParseError);
  EXPECT_THROW(parse("1e"), ParseError);
  EXPECT_THROW(parse("sin u"), ParseError);
  EXPECT_THROW(parse("u $ 2"), ParseError);
}

TEST(Differentiate, SquareIsTwoU) { EXPECT_EQ(differentiate(parse("u^2")), parse("2*u")); }

TEST(Differentiate, SinIsCos) { EXPECT_EQ(differentiate(parse("sin(u)")), parse("cos(u)")); }

TEST(Differentiate, ScaledSquareRootAtOne) {
  // Oracle: central difference of 2 sqrt(u) at u = 1.
  const double fd = central_difference([](double u) { return 2.0 * std::sqrt(u); }, 1.0, 1e-5);
  EXPECT_NEAR(fd, 1.0, 1e-9);
  EXPECT_NEAR(eval(differentiate(parse("2*u^(1/2)")), 1.0), fd, 1e-9);
  EXPECT_NEAR(eval(differentiate(parse("2*u^0.5")), 1.0), 1.0, 1e-15);
}

TEST(Differentiate, Rules) {
  struct Case {
    const char* text;
    double u;
    double expected;
  };
  // Expected values worked by hand.
  const Case cases[] = {
      {"u*sin(u)", 0.0, 0.0},
      {"1/u", 2.0, -0.25},
      {"exp(2*u)", 0.0, 2.0},
      {"log(u^2)", 2.0, 1.0},
      {"sqrt(u)", 4.0, 0.25},
      {"cos(u)", 0.0, 0.0},
      {"-u^3", 1.0, -3.0},
      {"2^u", 0.0, std::log(2.0)},
      {"u^u", 1.0, 1.0},
      {"u^(1+1)", 3.0, 6.0},
      {"7", 1.0, 0.0},
  };
  for (const auto& c : cases) EXPECT_NEAR(eval(differentiate(parse(c.text)), c.u), c.expected, 1e-14) << c.text;
}

TEST(Differentiate, NonConstantExponentRejectsNonPositiveBaseAtEval) {
  const Expr d = differentiate(parse("u^u"));
  EXPECT_THROW(eval(d, -1.0), DomainError);
}

TEST(Eval, Examples) {
  EXPECT_EQ(eval(parse("u^2"), 3.0), 9.0);
  EXPECT_EQ(eval(parse("u^2"), 0.0), 0.0);
  EXPECT_DOUBLE_EQ(eval(parse("2*u^(-0.5)"), 4.0), 1.0);
}

TEST(Eval, DomainErrorsNameTheSubtree) {
  try {
    eval(parse("1 + log(u)"), -1.0);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_EQ(e.subtree(), "log(u)");
  }
  try {
    eval(parse("u/(u - 1)"), 1.0);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_EQ(e.subtree(), "u/(u - 1)");
  }
  EXPECT_THROW(eval(parse("sqrt(u - 2)"), 1.0), DomainError);
  EXPECT_THROW(eval(parse("u^0.5"), -1.0), DomainError);
  EXPECT_THROW(eval(parse("u^-1"), 0.0), DomainError);
  EXPECT_THROW(eval(parse("exp(exp(u))"), 10.0), DomainError);
}

TEST(Print, RoundTripsSimpleForms) {
  for (const char* text : {"u", "u^2", "1*u^2", "2*u^-0.5", "-u^2", "(-2)^u", "sin(u)^2", "u^u^2", "(u^u)^2",
                           "u - (u - 1)", "u/(u*2)", "-(u + 1)", "u - -2", "1e-05*u"}) {
    const Expr e = parse(text);
    EXPECT_EQ(parse(to_string(e)), e) << text << " -> " << to_string(e);
  }
  EXPECT_EQ(to_string(parse("1*u^2")), "1*u^2");
  EXPECT_EQ(to_string(parse("2*u^(-0.5)")), "2*u^-0.5");
}

// parse . print . parse is idempotent on random trees.
TEST(Print, RandomTreesRoundTrip) {
  surf4::testing::ExprGenerator gen(12345);
  for (int i = 0; i < 500; ++i) {
    const Expr e = gen.generate(6);
    const Expr once = parse(to_string(e));
    EXPECT_EQ(parse(to_string(once)), once) << to_string(e);
  }
}

// Symbolic derivative against a central difference with h = 1e-5 max(1, |u|).
TEST(Differentiate, RandomTreesMatchFiniteDifferences) {
  surf4::testing::ExprGenerator gen(2024);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> pick_u(0.5, 2.0);
  int checked = 0;
  int attempts = 0;
  int unresolved = 0;
  while (checked < 200 && attempts < 100000) {
    ++attempts;
    const Expr e = gen.generate(6);
    const double u = pick_u(rng);
    const double h = 1e-5 * std::max(1.0, std::fabs(u));
    double fd, d;
    try {
      for (double t : {u - 1e-3, u - h, u, u + h, u + 1e-3})
        if (std::fabs(eval(e, t)) > 1e3) throw DomainError("out of test range");
      auto f = [&](double t) { return eval(e, t); };
      fd = central_difference(f, u, h);
      // The oracle only resolves the derivative when it has converged at
      // this step; rapidly oscillating samples are skipped.
      if (std::fabs(fd - central_difference(f, u, h / 2)) > 1e-7 * std::max(1.0, std::fabs(fd))) {
        ++unresolved;
        continue;
      }
      d = eval(differentiate(e), u);
    } catch (const DomainError&) {
      continue;
    }
    ++checked;
    EXPECT_LE(std::fabs(d - fd), 1e-6 * std::max(1.0, std::fabs(fd))) << to_string(e) << " at u = " << u;
  }
  EXPECT_EQ(checked, 200);
  EXPECT_LT(unresolved, 20);
}

TEST(Profile, DerivativesAreSymbolic) {
  const Profile p = Profile::parse("u^3 + sin(u)");
  EXPECT_EQ(p.d1(), differentiate(p.expr()));
  EXPECT_EQ(p.d2(), differentiate(p.d1()));
  const ProfileJet j = p.jet(0.7);
  EXPECT_DOUBLE_EQ(j.value, 0.7 * 0.7 * 0.7 + std::sin(0.7));
  EXPECT_NEAR(j.d1, 3 * 0.49 + std::cos(0.7), 1e-14);
  EXPECT_NEAR(j.d2, 6 * 0.7 - std::sin(0.7), 1e-14);
}

TEST(Profile, FirstDerivativeAgreesWithFiniteDifference) {
  for (const char* text : {"u", "u^2", "u^3", "2*u", "2*u^0.5", "exp(u)*cos(3*u)", "log(1 + u^2)"}) {
    const Profile p = Profile::parse(text);
    for (double u : {0.3, 0.9, 1.7, 3.2}) {
      const double fd = central_difference([&](double t) { return p.value(t); }, u, 1e-5 * std::max(1.0, u));
      EXPECT_LE(std::fabs(p.slope(u) - fd), 1e-7 * std::max(1.0, std::fabs(fd))) << text << " at " << u;
    }
  }
}
