#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "surf4/forms.hpp"
#include "surf4/rotational.hpp"
#include "surf4/surface.hpp"

using namespace surf4;

namespace {

const double kSqrt5 = std::sqrt(5.0);

RotationalSurface surface(const char* f, const char* g, double a, double b) {
  return RotationalSurface(Profile::parse(f), Profile::parse(g), a, b);
}

RotationalSurface running_example() { return surface("u", "u^2", 1.0, 2.0); }

Jet2 plane_jet() {
  Jet2 j{};
  j.zu = {1, 0, 0, 0};
  j.zv = {0, 1, 0, 0};
  return j;
}

double rel(double a, double b) { return std::fabs(a - b) / std::max(1e-300, std::fabs(b)); }

}  // namespace

TEST(FirstForm, RunningExample) {
  const FirstForm ff = first_form(analytic_jet2(running_example(), 1.0, 0.0));
  EXPECT_DOUBLE_EQ(ff.E, 5.0);
  EXPECT_DOUBLE_EQ(ff.F, 0.0);
  EXPECT_DOUBLE_EQ(ff.G, 5.0);
  EXPECT_DOUBLE_EQ(ff.W, 5.0);
}

TEST(FirstForm, Plane) {
  const FirstForm ff = first_form(plane_jet());
  EXPECT_EQ(ff.E, 1.0);
  EXPECT_EQ(ff.F, 0.0);
  EXPECT_EQ(ff.G, 1.0);
}

TEST(FirstForm, RotationalFamilyIsOrthogonal) {
  const auto s = surface("u", "u^3", 1.0, 2.0);
  for (double v : {0.0, 0.4, 2.2}) {
    const FirstForm ff = first_form(analytic_jet2(s, 1.3, v));
    EXPECT_NEAR(ff.F, 0.0, 1e-14);
  }
}

TEST(FirstForm, DegenerateMetric) {
  Jet2 j{};
  j.zu = {1, 0, 0, 0};
  j.zv = {3, 0, 0, 0};
  EXPECT_THROW(first_form(j), DegenerateError);
}

TEST(SecondTensor, RunningExampleInClosedFormFrame) {
  const auto s = running_example();
  const NormalFrame n = rotational_normals(s, 1.0, 0.0);
  const SecondTensor ct = second_tensor(analytic_jet2(s, 1.0, 0.0), n.e1, n.e2);
  EXPECT_NEAR(ct.c11_1, -2.0 / kSqrt5, 1e-15);
  EXPECT_NEAR(ct.c11_2, 0.0, 1e-15);
  EXPECT_NEAR(ct.c12_1, 0.0, 1e-15);
  EXPECT_NEAR(ct.c12_2, -2.0 / kSqrt5, 1e-15);
  EXPECT_NEAR(ct.c22_1, 2.0 / kSqrt5, 1e-15);
  EXPECT_NEAR(ct.c22_2, 0.0, 1e-15);
}

TEST(SecondTensor, PlaneIsZero) {
  const Jet2 j = plane_jet();
  const NormalFrame n = gram_schmidt_normals(j);
  const SecondTensor ct = second_tensor(j, n.e1, n.e2);
  for (double c : {ct.c11_1, ct.c11_2, ct.c12_1, ct.c12_2, ct.c22_1, ct.c22_2}) EXPECT_EQ(c, 0.0);
}

TEST(SecondTensor, NegatingE2NegatesSecondColumn) {
  const Jet2 j = analytic_jet2(surface("u", "u^3", 1.0, 2.0), 1.2, 0.9);
  const NormalFrame n = gram_schmidt_normals(j);
  const SecondTensor a = second_tensor(j, n.e1, n.e2);
  const SecondTensor b = second_tensor(j, n.e1, -n.e2);
  EXPECT_EQ(b.c11_1, a.c11_1);
  EXPECT_EQ(b.c12_1, a.c12_1);
  EXPECT_EQ(b.c22_1, a.c22_1);
  EXPECT_EQ(b.c11_2, -a.c11_2);
  EXPECT_EQ(b.c12_2, -a.c12_2);
  EXPECT_EQ(b.c22_2, -a.c22_2);
}

TEST(SecondTensor, RejectsTangentialFrame) {
  const Jet2 j = plane_jet();
  EXPECT_THROW(second_tensor(j, Vec4{1, 0, 0, 0}, Vec4{0, 0, 1, 0}), std::invalid_argument);
}

TEST(Christoffel, RunningExample) {
  // Orthogonal coordinates: G11^1 = E_u/2E, G12^2 = G_u/2G, G22^1 = -G_u/2E
  // with E_u = 8, G_u = 18, E = G = 5.
  const Christoffel ch = christoffel(analytic_jet2(running_example(), 1.0, 0.0));
  EXPECT_NEAR(ch.g11_1, 0.8, 1e-15);
  EXPECT_NEAR(ch.g11_2, 0.0, 1e-15);
  EXPECT_NEAR(ch.g12_1, 0.0, 1e-15);
  EXPECT_NEAR(ch.g12_2, 1.8, 1e-15);
  EXPECT_NEAR(ch.g22_1, -1.8, 1e-15);
  EXPECT_NEAR(ch.g22_2, 0.0, 1e-15);
}

TEST(Christoffel, PlaneIsZero) {
  const Christoffel ch = christoffel(plane_jet());
  for (double c : {ch.g11_1, ch.g11_2, ch.g12_1, ch.g12_2, ch.g22_1, ch.g22_2}) EXPECT_EQ(c, 0.0);
}

TEST(Christoffel, ResidualsAreNormal) {
  const Jet2 j = analytic_jet2(surface("cos(u) + 2", "sin(u)*u", 1.0, 3.0), 0.8, 1.4);
  const Christoffel ch = christoffel(j);
  const Vec4 r11 = j.zuu - ch.g11_1 * j.zu - ch.g11_2 * j.zv;
  const Vec4 r12 = j.zuv - ch.g12_1 * j.zu - ch.g12_2 * j.zv;
  const Vec4 r22 = j.zvv - ch.g22_1 * j.zu - ch.g22_2 * j.zv;
  for (const Vec4& r : {r11, r12, r22}) {
    EXPECT_NEAR(dot(r, j.zu), 0.0, 1e-10);
    EXPECT_NEAR(dot(r, j.zv), 0.0, 1e-10);
  }
}

TEST(Lmn, RunningExample) {
  const double c = 2.0 / kSqrt5;
  const SecondForm sf = lmn({-c, 0.0, 0.0, -c, c, 0.0}, 5.0);
  EXPECT_NEAR(sf.L, 8.0 / 25.0, 1e-15);
  EXPECT_EQ(sf.M, 0.0);
  EXPECT_NEAR(sf.N, 8.0 / 25.0, 1e-15);
}

TEST(Lmn, ZeroTensor) {
  const SecondForm sf = lmn({}, 3.0);
  EXPECT_EQ(sf.L, 0.0);
  EXPECT_EQ(sf.M, 0.0);
  EXPECT_EQ(sf.N, 0.0);
}

TEST(Lmn, MatchesClosedFormL) {
  // 2ab(gf' - fg')(g'f'' - f'g'') / ((a^2 f^2 + b^2 g^2)(f'^2 + g'^2)) at f=u, g=u^2, a=1, b=2, u=1
  const double closed_L = 2.0 * 1 * 2 * (1 - 2) * (0 - 2) / (5.0 * 5.0);
  EXPECT_DOUBLE_EQ(closed_L, 8.0 / 25.0);
  const auto p = evaluate_generic(analytic_jet2(running_example(), 1.0, 0.0));
  EXPECT_NEAR(p.sf.L, closed_L, 1e-14);
  EXPECT_NEAR(p.sf.M, 0.0, 1e-14);
  EXPECT_NEAR(p.sf.N, 8.0 / 25.0, 1e-14);
}

TEST(Invariants, RunningExampleIsElliptic) {
  const InvariantRecord r = invariants({5, 0, 5, 5}, {8.0 / 25, 0, 8.0 / 25}, -8.0 / 125);
  EXPECT_NEAR(r.k, 64.0 / 15625, 1e-17);
  EXPECT_NEAR(r.kappa, 8.0 / 125, 1e-16);
  EXPECT_EQ(r.K, -8.0 / 125);
  EXPECT_EQ(r.type, PointType::elliptic);
}

TEST(Invariants, ZeroSecondFormIsFlat) {
  const InvariantRecord r = invariants({1, 0, 1, 1}, {0, 0, 0}, 0.0);
  EXPECT_EQ(r.k, 0.0);
  EXPECT_EQ(r.kappa, 0.0);
  EXPECT_EQ(r.type, PointType::flat);
}

TEST(Invariants, SwappedSpeedsAreHyperbolic) {
  const auto p = evaluate_generic(analytic_jet2(surface("u", "u^2", 2.0, 1.0), 1.0, 0.0));
  EXPECT_NEAR(p.rec.k, -224.0 / 15625, 1e-15);
  EXPECT_EQ(p.rec.type, PointType::hyperbolic);
}

TEST(Invariants, ParabolicWhenOnlyKappaSurvives) {
  // L = 1, M = 0, N = 0: k = 0, kappa = G L / 2 EG = 1/2.
  const InvariantRecord r = invariants({1, 0, 1, 1}, {1, 0, 0}, 0.0);
  EXPECT_EQ(r.k, 0.0);
  EXPECT_EQ(r.type, PointType::parabolic);
}

TEST(GaussCurvature, RunningExample) {
  const auto p = evaluate_generic(analytic_jet2(running_example(), 1.0, 0.0));
  EXPECT_NEAR(p.rec.K, -8.0 / 125, 1e-15);
}

TEST(GaussCurvature, Plane) {
  const Jet2 j = plane_jet();
  const NormalFrame n = gram_schmidt_normals(j);
  EXPECT_EQ(gauss_curvature(first_form(j), second_tensor(j, n.e1, n.e2)), 0.0);
}

TEST(GaussCurvature, MatchesOctetRelationOnFamily) {
  for (const auto& s : {surface("u", "u^2", 1.0, 2.0), surface("u", "u^3", 1.0, 2.0),
                        surface("u", "2*u^0.5", 2.0, 1.0)}) {
    for (double u : {0.6, 1.0, 1.7}) {
      const auto p = evaluate_generic(analytic_jet2(s, u, 0.3));
      const FrenetOctet o = closed_octet_at(s, u);
      EXPECT_NEAR(p.rec.K, o.nu1 * o.nu2 - (o.lambda * o.lambda + o.mu * o.mu), 1e-10);
    }
  }
}

TEST(SecondFormValue, Examples) {
  EXPECT_DOUBLE_EQ(second_form_value({8.0 / 25, 0, 8.0 / 25}, 1.0, 0.0), 8.0 / 25);
  // Asymptotic tangent.
  EXPECT_EQ(second_form_value({1, 0, -1}, 1.0, 1.0), 0.0);
  EXPECT_EQ(second_form_value({1, 2, 3}, 1.0, -1.0), 1.0 - 4.0 + 3.0);
}

TEST(PrincipalParams, Examples) {
  const auto p = evaluate_generic(analytic_jet2(surface("u", "u^3", 1.0, 2.0), 1.1, 0.5));
  EXPECT_TRUE(is_principal_params(p.ff, p.sf, 1e-12));
  EXPECT_FALSE(is_principal_params({1, 0.5, 1, 1}, {0, 0, 0}, 1e-12));
  EXPECT_TRUE(is_principal_params({1, 0, 1, 1}, {1, 0, 1}, 0.0));
}

TEST(Minimality, RunningExampleIsMinimalSuperconformal) {
  const InvariantRecord r = invariants({5, 0, 5, 5}, {8.0 / 25, 0, 8.0 / 25}, -8.0 / 125);
  EXPECT_TRUE(is_minimal(r, 1e-12));
  EXPECT_TRUE(is_superconformal(r, 1e-12));
}

TEST(Minimality, CubicMeridianIsNot) {
  const auto p = evaluate_generic(analytic_jet2(surface("u", "u^3", 1.0, 2.0), 1.0, 0.0));
  EXPECT_FALSE(is_minimal(p.rec, 1e-6));
  EXPECT_FALSE(is_superconformal(p.rec, 1e-6));
}

TEST(Minimality, FlatPointPassesDegenerately) {
  const InvariantRecord r = invariants({1, 0, 1, 1}, {0, 0, 0}, 0.0);
  EXPECT_TRUE(is_minimal(r, 1e-12));
  EXPECT_TRUE(is_superconformal(r, 1e-12));
  EXPECT_EQ(r.type, PointType::flat);
}

TEST(MeanCurvature, Examples) {
  const auto p = evaluate_generic(analytic_jet2(running_example(), 1.0, 0.0));
  EXPECT_LE(norm(mean_curvature_vector(p.ff, p.ct, p.normals.e1, p.normals.e2)), 1e-15);

  const Jet2 j = plane_jet();
  const NormalFrame n = gram_schmidt_normals(j);
  EXPECT_EQ(norm(mean_curvature_vector(first_form(j), second_tensor(j, n.e1, n.e2), n.e1, n.e2)), 0.0);

  // f=u, g=u^3, a=1, b=2 at u=1: sigma(x,x) = -6/10^1.5 n1, sigma(y,y) = 1/(5 sqrt 10) n1.
  const auto q = evaluate_generic(analytic_jet2(surface("u", "u^3", 1.0, 2.0), 1.0, 0.0));
  const double expected = 0.5 * std::fabs(-6.0 / std::pow(10.0, 1.5) + 1.0 / (5.0 * std::sqrt(10.0)));
  EXPECT_NEAR(norm(mean_curvature_vector(q.ff, q.ct, q.normals.e1, q.normals.e2)), expected, 1e-14);
  EXPECT_GT(expected, 0.0);
}

TEST(Ellipse, RunningExampleIsCircleAtOrigin) {
  const auto p = evaluate_generic(analytic_jet2(running_example(), 1.0, 0.0));
  const auto samples = ellipse_samples(p.ff, p.ct, p.normals.e1, p.normals.e2, 8);
  ASSERT_EQ(samples.size(), 8u);
  Vec4 mean;
  for (const auto& s : samples) {
    EXPECT_NEAR(norm(s), 2.0 / (5.0 * kSqrt5), 1e-15);
    mean += s / 8.0;
  }
  EXPECT_LE(norm(mean), 1e-15);
  const CircleTest t = is_circle(samples, 1e-12);
  EXPECT_TRUE(t.circle);
  EXPECT_FALSE(t.degenerate);
  EXPECT_NEAR(t.radius, 0.1788854382, 1e-10);
}

TEST(Ellipse, FirstSampleIsSigmaXX) {
  const auto s = surface("u", "u^3", 1.0, 2.0);
  const auto p = evaluate_generic(analytic_jet2(s, 1.4, 0.2));
  const auto samples = ellipse_samples(p.ff, p.ct, p.normals.e1, p.normals.e2, 5);
  const Vec4 sxx = (p.ct.c11_1 * p.normals.e1 + p.ct.c11_2 * p.normals.e2) / p.ff.E;
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(samples[0][i], sxx[i], 1e-15);
}

TEST(Ellipse, PlaneIsAPoint) {
  const Jet2 j = plane_jet();
  const NormalFrame n = gram_schmidt_normals(j);
  const auto samples = ellipse_samples(first_form(j), second_tensor(j, n.e1, n.e2), n.e1, n.e2, 6);
  for (const auto& s : samples) EXPECT_EQ(s, Vec4{});
  const CircleTest t = is_circle(samples, 1e-12);
  EXPECT_TRUE(t.circle);
  EXPECT_TRUE(t.degenerate);
}

TEST(Ellipse, AxisAlignedEllipseIsNotACircle) {
  // Half-difference of sigma(x,x), sigma(y,y) has length 1; sigma(x,y) has length 2.
  const SecondTensor ct{1, 0, 0, 2, -1, 0};
  const auto samples = ellipse_samples({1, 0, 1, 1}, ct, Vec4::basis(2), Vec4::basis(3), 16);
  EXPECT_FALSE(is_circle(samples, 1e-6).circle);
}

TEST(Ellipse, Preconditions) {
  EXPECT_THROW(ellipse_samples({1, 0, 1, 1}, {}, Vec4::basis(2), Vec4::basis(3), 2), std::invalid_argument);
  EXPECT_THROW(is_circle({Vec4{}, Vec4{}}, 1e-6), std::invalid_argument);
}

// Any two positively oriented normal frames give the same L, M, N.
TEST(FormsProperties, FrameIndependence) {
  const auto s = surface("u", "u^3", 1.0, 2.0);
  for (double u : {0.7, 1.3})
    for (double theta : {0.3, 1.9, -2.4}) {
      const Jet2 j = analytic_jet2(s, u, 0.8);
      const auto p = evaluate_generic(j);
      const Vec4 e1 = std::cos(theta) * p.normals.e1 + std::sin(theta) * p.normals.e2;
      const Vec4 e2 = -std::sin(theta) * p.normals.e1 + std::cos(theta) * p.normals.e2;
      const SecondForm sf = lmn(second_tensor(j, e1, e2), p.ff.W);
      const InvariantRecord r = invariants(p.ff, sf, p.rec.K);
      EXPECT_NEAR(sf.L, p.sf.L, 1e-10);
      EXPECT_NEAR(sf.M, p.sf.M, 1e-10);
      EXPECT_NEAR(sf.N, p.sf.N, 1e-10);
      EXPECT_NEAR(r.k, p.rec.k, 1e-10);
      EXPECT_NEAR(r.kappa, p.rec.kappa, 1e-10);
    }
}

// Flipping e2 negates L, M, N and kappa and keeps k.
TEST(FormsProperties, OrientationFlipLaw) {
  const auto s = surface("cos(u) + 2", "sin(u)*u", 1.0, 3.0);
  for (double u : {0.4, 1.1, 2.3}) {
    const Jet2 j = analytic_jet2(s, u, 0.5);
    const auto p = evaluate_generic(j);
    const SecondForm sf = lmn(second_tensor(j, p.normals.e1, -p.normals.e2), p.ff.W);
    const InvariantRecord r = invariants(p.ff, sf, p.rec.K);
    EXPECT_EQ(sf.L, -p.sf.L);
    EXPECT_EQ(sf.M, -p.sf.M);
    EXPECT_EQ(sf.N, -p.sf.N);
    EXPECT_EQ(r.kappa, -p.rec.kappa);
    EXPECT_EQ(r.k, p.rec.k);
  }
}

// Generic k equals the rotational closed form on a 20x20 grid.
TEST(FormsProperties, RelationAuditOnGrid) {
  const auto s = surface("u", "u^3", 1.0, 2.0);
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 20; ++j) {
      const double u = 0.5 + 1.5 * i / 19.0;
      const double v = 2.0 * std::numbers::pi * j / 20.0;
      const auto p = evaluate_generic(analytic_jet2(s, u, v));
      EXPECT_LE(rel(p.rec.k, closed_invariants_at(s, u).k), 1e-9) << u << ", " << v;
    }
}

// |H| = 0 iff kappa^2 - k = 0 away from flat points. (kappa^2 - k equals
// (nu1 + nu2)^2 mu^2 on the family, so at mu = 0 it vanishes while H need not.)
TEST(FormsProperties, MinimalityIffCenteredEllipse) {
  int minimal_seen = 0, non_minimal_seen = 0;
  for (const auto& s : {surface("u", "u^2", 1.0, 2.0), surface("u", "u^3", 1.0, 2.0),
                        surface("u", "2*u^-0.5", 2.0, 1.0), surface("u", "3*u^0.5", 2.0, 1.0),
                        surface("u", "u^-2", 1.0, 2.0), surface("cos(u) + 2", "sin(u)", 1.0, 3.0)}) {
    for (int i = 0; i < 20; ++i) {
      const double u = 0.5 + 1.5 * i / 19.0;
      const auto p = evaluate_generic(analytic_jet2(s, u, 0.3 * i));
      if (p.rec.type == PointType::flat) continue;
      const bool centered = norm(mean_curvature_vector(p.ff, p.ct, p.normals.e1, p.normals.e2)) <= 1e-10;
      const bool minimal = is_minimal(p.rec, 1e-10);
      EXPECT_EQ(centered, minimal) << s.g().text() << " at u = " << u;
      (minimal ? minimal_seen : non_minimal_seen)++;
    }
  }
  EXPECT_GT(minimal_seen, 0);
  EXPECT_GT(non_minimal_seen, 0);
}
