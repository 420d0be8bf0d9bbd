#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "gqe/catalog.hpp"
#include "gqe/error.hpp"
#include "gqe/rigidity.hpp"
#include "oracles.hpp"

using gqe::GqeStructure;
using gqe::Profile1D;
using gqe::Vector;

namespace {

std::vector<Vector> witness_points(int n) {
  std::vector<Vector> out;
  for (const auto& p : gqe::radial_grid(n, {50, 8, 0.01, 9.0})) out.push_back(p.x);
  return out;
}

GqeStructure einstein_chart(const gqe::ConformalMetric& m, int n) {
  return gqe::radial_structure(m.factor().profile(), Profile1D::identity(), n);
}

}  // namespace

TEST(Divergence, GeneralIdentityOnCatalog) {
  for (int n : {3, 4}) {
    for (const auto& s : gqe::catalog_structures(n)) {
      const auto [lo, hi] = gqe::default_grid_range(s);
      const gqe::PhiTransform pt = gqe::potential_transform(s, lo, hi);
      for (const auto& p : gqe::default_grid(s)) {
        if (std::abs(s.phi().value(p.x)) < 1e-6) continue;
        EXPECT_LE(gqe::divergence_identity_gap(s, pt, p.x).general_gap, 5e-5) << s.label;
      }
    }
  }
}

TEST(Divergence, TermsAreNotAllZero) {
  const GqeStructure s = gqe::example1(3);
  const gqe::PhiTransform pt = gqe::potential_transform(s, 0.0, 9.0);
  const Vector x = {0.6, -0.3, 0.4};
  const auto gaps = gqe::divergence_identity_gap(s, pt, x);
  EXPECT_GT(std::abs(gaps.divergence), 1e-3);
  EXPECT_NEAR(gaps.divergence, gaps.scalar_term + gaps.ricci_term, 1e-8);
}

TEST(SphereWitness, ZeroVZeroConstant) {
  const auto report = gqe::sphere_witness_verify(3, Profile1D::constant(0.0), 0.0,
                                                 witness_points(3));
  EXPECT_TRUE(report.overall_pass());
  EXPECT_LE(report.find("residual")->max_gap(), 1e-7);
  EXPECT_LE(std::abs(report.value("c_tilde")), 1e-6);
  EXPECT_LE(report.find("divergence_constant_s")->max_gap(), 5e-5);
  EXPECT_EQ(report.find("residual")->points_evaluated(), 400);
}

TEST(SphereWitness, UnitV) {
  gqe::SphereWitnessOptions opts;
  opts.residual_tol = 1e-6;
  const auto report = gqe::sphere_witness_verify(3, Profile1D::constant(1.0), 0.0,
                                                 witness_points(3), opts);
  EXPECT_TRUE(report.overall_pass());
  EXPECT_LE(report.find("residual")->max_gap(), 1e-6);
}

TEST(SphereWitness, RecoversTheConstant) {
  for (int n : {3, 4}) {
    for (double c : {0.3, 0.5}) {
      const auto report = gqe::sphere_witness_verify(n, gqe::parse_profile("tanh(t)/2", "t"), c,
                                                     witness_points(n));
      EXPECT_TRUE(report.overall_pass()) << "n=" << n << " c=" << c;
      EXPECT_NEAR(report.value("c_tilde"), c, 1e-6);
    }
  }
}

TEST(SphereWitness, LinearTransformHasExplicitLambda) {
  // v ≡ 0, φ_T(t) = t: f = −h/n, ∇²f = (h/n) g, so λ = (n−1) + h/n.
  const int n = 3;
  const gqe::PhiTransform pt(Profile1D::constant(0.0), 1.0, 0.0, 0.0, -4.0, 4.0);
  const gqe::SphereWitness w = gqe::make_sphere_witness(n, pt, 0.0);
  for (const auto& x : witness_points(n)) {
    const double r = gqe::dot(x, x);
    const double h = (r - 1) / (r + 1);
    EXPECT_NEAR(w.structure.f.value(x), -h / n, 1e-12);
    EXPECT_NEAR(w.structure.lambda.value(x), (n - 1) + h / n, 1e-8);
    EXPECT_NEAR(w.structure.nu.value(x), 0.0, 1e-14);
  }
}

TEST(SphereWitness, OutOfRangeConstant) {
  const gqe::PhiTransform pt(Profile1D::constant(0.0), 1.0, 0.0, 0.0, -0.5, 0.5);
  EXPECT_THROW(gqe::make_sphere_witness(3, pt, 2.0), gqe::DomainError);
}

TEST(Models, ScalarCurvature) {
  using gqe::ModelKind;
  for (int n : {3, 4, 5}) {
    const auto e = gqe::model_space(ModelKind::Euclidean, 0.0, n);
    const auto h = gqe::model_space(ModelKind::HyperbolicHalfSpace, 1.0, n);
    const auto w = gqe::model_space(ModelKind::WarpedFlatFiber, 2.0, n);
    EXPECT_EQ(e.expected_scalar_curvature, 0.0);
    EXPECT_EQ(h.expected_scalar_curvature, -n * (n - 1.0));
    EXPECT_EQ(w.expected_scalar_curvature, -4.0 * n * (n - 1.0));
    for (const auto* m : {&e, &h, &w}) {
      for (const auto& x : gqe::model_sample_points(*m, 20, 5)) {
        EXPECT_NEAR(gqe::scalar_curvature_at(m->chart, x), m->expected_scalar_curvature, 1e-6);
      }
    }
  }
  EXPECT_EQ(gqe::parse_model_kind("hyperbolic-half-space"), ModelKind::HyperbolicHalfSpace);
  EXPECT_EQ(gqe::parse_model_kind("warped"), ModelKind::WarpedFlatFiber);
  EXPECT_THROW(gqe::parse_model_kind("torus"), gqe::InvalidArgument);
}

TEST(Models, EinsteinCaseOfDivergenceIdentity) {
  // On Einstein charts R̊ic = 0, so both sides vanish for any potential.
  const int n = 3;
  const GqeStructure s = einstein_chart(gqe::sphere_chart_metric(n), n);
  const gqe::PhiTransform pt(Profile1D::constant(0.0), 1.0, 0.0, 0.0, -1.0, 20.0);
  for (const auto& x : gqe::box_points(n, 10, -1, 1, 9)) {
    const auto gaps = gqe::divergence_identity_gap(s, pt, x);
    EXPECT_LE(gaps.general_gap, 1e-8);
    EXPECT_LE(std::abs(gaps.divergence), 1e-8);
  }
}

TEST(GeodesicRadius, ClosedForms) {
  for (double rho : {0.1, 0.5, 0.9, 0.999}) {
    EXPECT_NEAR(gqe::geodesic_radius(gqe::ball_chart_metric(3), rho),
                std::log((1 + rho) / (1 - rho)), 1e-10);
  }
  for (double rho : {0.5, 3.0, 100.0}) {
    EXPECT_NEAR(gqe::geodesic_radius(gqe::sphere_chart_metric(3), rho), 2 * std::atan(rho),
                1e-10);
    EXPECT_NEAR(gqe::geodesic_radius(gqe::euclidean_metric(3), rho), rho, 1e-10 * rho);
  }
}

TEST(Karp, VanishesOnEinsteinCharts) {
  const int n = 3;
  const gqe::PhiTransform pt(Profile1D::constant(0.0), 1.0, 0.0, 0.0, -1.0, 2.0);
  const GqeStructure ball = einstein_chart(gqe::ball_chart_metric(n), n);
  for (double rg : {0.5, 1.0, 2.0, 5.0}) EXPECT_LE(gqe::karp_annulus(ball, pt, rg), 1e-10);
  const gqe::PhiTransform wide(Profile1D::constant(0.0), 1.0, 0.0, 0.0, -1.0, 100.0);
  const GqeStructure sphere = einstein_chart(gqe::sphere_chart_metric(n), n);
  for (double rg : {0.5, 1.0}) EXPECT_LE(gqe::karp_annulus(sphere, wide, rg), 1e-10);
}

TEST(Karp, ChartExhausted) {
  const int n = 3;
  const gqe::PhiTransform pt(Profile1D::constant(0.0), 1.0, 0.0, 0.0, -1.0, 100.0);
  EXPECT_THROW(gqe::karp_annulus(einstein_chart(gqe::sphere_chart_metric(n), n), pt, 2.0),
               gqe::DomainError);
  EXPECT_THROW(gqe::karp_annulus(einstein_chart(gqe::ball_chart_metric(n), n), pt, 20.0),
               gqe::DomainError);
}

TEST(Karp, GaussianExampleRegression) {
  const GqeStructure s = gqe::example1(3, 1.0);
  const gqe::PhiTransform pt = gqe::potential_transform(s, 0.0, 9.0);
  EXPECT_NEAR(gqe::karp_annulus(s, pt, 1.0), 881.173205638, 881.173205638 * 1e-8);
}

TEST(Karp, GaussianExampleAgainstDirectQuadrature) {
  const int n = 3;
  const double rg = 0.5;
  const GqeStructure s = gqe::example1(n, 1.0);
  const gqe::PhiTransform pt = gqe::potential_transform(s, 0.0, 9.0);
  // s(ρ) = ∫₀^ρ e^{t⁴/2} dt, inverted by bisection.
  const auto dist = [](double rho) {
    return oracle::gauss([](double t) { return std::exp(std::pow(t, 4) / 2); }, 0, rho, 400);
  };
  const auto radius = [&](double target) {
    double lo = 0, hi = 3;
    for (int k = 0; k < 100; ++k) ((dist(0.5 * (lo + hi)) < target) ? lo : hi) = 0.5 * (lo + hi);
    return 0.5 * (lo + hi);
  };
  const auto integrand = [&](double t) {
    const Vector x = {t, 0.0, 0.0};
    const gqe::ConformalPoint p = s.metric.at(x);
    const gqe::FieldJet u = gqe::transformed_potential_jet(s, pt, x);
    const gqe::SymTensor ric = p.traceless(p.ricci());
    Vector w(n, 0.0);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) w[i] += ric(i, j) * p.phi() * p.phi() * u.gradient[j];
    }
    return std::abs(p.phi()) * gqe::norm2(w) * std::pow(p.phi(), -n) * t * t;
  };
  const double omega = 4 * std::numbers::pi;
  const double expected = omega / rg * oracle::gauss(integrand, radius(rg), radius(2 * rg), 400);
  EXPECT_NEAR(gqe::karp_annulus(s, pt, rg), expected, 1e-7 * expected);
}

TEST(RayLength, InverseLinearExample) {
  const GqeStructure s = gqe::example2(3);
  const Vector e1 = {1.0, 0.0, 0.0};
  EXPECT_NEAR(gqe::ray_length(s, e1, 1.0), 4.0 / 3.0, 1e-10);
  EXPECT_NEAR(gqe::ray_length(s, e1, 2.0), 14.0 / 3.0, 1e-10);
  EXPECT_NEAR(gqe::ray_length(s, e1, 10.0), 10 + 1000.0 / 3, 1e-10 * 343);
}

TEST(RayLength, GaussianExample) {
  const GqeStructure s = gqe::example1(3);
  const Vector d = {0.0, 0.6, 0.8};
  EXPECT_NEAR(gqe::ray_length(s, d, 1.0), oracle::gaussian_ray_length(1.0), 1e-11);
  EXPECT_NEAR(gqe::ray_length(s, d, 2.0), oracle::gaussian_ray_length(2.0),
              1e-10 * oracle::gaussian_ray_length(2.0));
  EXPECT_EQ(gqe::ray_length(s, d, 10.0), std::numeric_limits<double>::infinity());
}

TEST(RayLength, TanhExampleBothWays) {
  const GqeStructure s = gqe::example3(3);
  // 1/(1 + tanh t) = (1 + e^{−2t})/2.
  for (double T : {1.0, 10.0, 100.0}) {
    const Vector plus = {1.0, 0.0, 0.0}, minus = {-1.0, 0.0, 0.0};
    const double up = T / 2 + (1 - std::exp(-2 * T)) / 4;
    const double down = T / 2 + (std::exp(2 * T) - 1) / 4;
    EXPECT_NEAR(gqe::ray_length(s, plus, T), up, 1e-10 * up);
    EXPECT_NEAR(gqe::ray_length(s, minus, T), down, 1e-10 * down);
  }
}

TEST(RayLength, BoundedFactorBound) {
  // sup|φ| = 1, 1, 2 for the three examples.
  const std::pair<GqeStructure, double> cases[] = {
      {gqe::example1(3), 1.0}, {gqe::example2(3), 1.0}, {gqe::example3(3), 2.0}};
  gqe::Rng rng(13);
  for (const auto& [s, sup] : cases) {
    for (int k = 0; k < 4; ++k) {
      const Vector dir = rng.unit_vector(3);
      double previous = 0.0;
      for (double T : {1.0, 10.0, 100.0}) {
        const double len = gqe::ray_length(s, dir, T);
        EXPECT_GE(len, T / sup * (1 - 1e-12)) << s.label;
        EXPECT_GE(len, previous);
        previous = len;
      }
    }
  }
}

TEST(RayLength, SignChangeIsAnError) {
  const gqe::ConformalMetric m(
      gqe::ScalarField::translation(gqe::parse_profile("1 - u", "u"), {1.0, 0.0, 0.0}));
  const Vector origin = {0.0, 0.0, 0.0}, dir = {1.0, 0.0, 0.0};
  EXPECT_THROW(gqe::ray_length(m, origin, dir, 2.0), gqe::ZeroConformalFactor);
  EXPECT_NEAR(gqe::ray_length(m, origin, dir, 0.5), std::log(2.0), 1e-10);
}
