#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "gqe/catalog.hpp"
#include "gqe/error.hpp"
#include "gqe/structure.hpp"
#include "oracles.hpp"

using gqe::GqeStructure;
using gqe::Vector;

namespace {

double max_residual(const GqeStructure& s, const std::vector<gqe::GridPoint>& points,
                    long* evaluated = nullptr) {
  double worst = 0.0;
  long count = 0;
  for (const auto& p : points) {
    if (std::abs(s.phi().value(p.x)) < 1e-6) continue;
    worst = std::max(worst, gqe::residual_at(s, p.x).max_abs());
    ++count;
  }
  if (evaluated) *evaluated = count;
  return worst;
}

}  // namespace

TEST(Closure, GaussianExampleFrozenValues) {
  const auto c = gqe::radial_closure(gqe::catalog_profile("gaussian"),
                                     gqe::Profile1D::identity(), 3);
  EXPECT_NEAR(c.nu.value(1.0), -2.0, 1e-14);
  EXPECT_NEAR(c.lambda.value(1.0), -10.0 / std::numbers::e, 1e-14);
  EXPECT_NEAR(c.scalar_curvature.value(1.0), -48.0 / std::numbers::e, 1e-13);
}

TEST(Closure, RadialExamplesMatchPrintedForms) {
  for (int n : {3, 4, 5}) {
    for (double c : {1.0, 2.0, -0.5}) {
      const auto f = gqe::affine(gqe::Profile1D::identity(), c, 0.0);
      const auto c1 = gqe::radial_closure(gqe::catalog_profile("gaussian"), f, n);
      const auto c2 = gqe::radial_closure(gqe::catalog_profile("inverse_linear"), f, n);
      for (int k = 0; k < 50; ++k) {
        const double r = 0.01 + 9.0 * k / 49.0;
        const auto e1 = oracle::gaussian_example(n, c, r);
        const auto e2 = oracle::inverse_linear_example(n, c, r);
        EXPECT_LE(oracle::rel(c1.nu.value(r), e1.nu), 1e-10);
        EXPECT_LE(oracle::rel(c1.lambda.value(r), e1.lambda), 1e-10);
        EXPECT_LE(oracle::rel(c1.scalar_curvature.value(r), e1.scalar), 1e-10);
        EXPECT_LE(oracle::rel(c2.nu.value(r), e2.nu), 1e-10);
        EXPECT_LE(oracle::rel(c2.lambda.value(r), e2.lambda), 1e-10);
        EXPECT_LE(oracle::rel(c2.scalar_curvature.value(r), e2.scalar), 1e-10);
      }
    }
  }
}

TEST(Closure, TranslationExampleMatchesPrintedForm) {
  for (int n : {3, 4, 5}) {
    for (const Vector& alpha : {Vector(n, 0.0), Vector(n, 0.7)}) {
      Vector a = alpha;
      a[0] += 1.0;
      const double asq = gqe::dot(a, a);
      const auto c = gqe::translation_closure(gqe::catalog_profile("one_plus_tanh"),
                                              gqe::Profile1D::identity(), a, n);
      for (int k = 0; k < 50; ++k) {
        const double u = -3.0 + 6.0 * k / 49.0;
        const auto e = oracle::tanh_example(n, asq, u);
        EXPECT_LE(oracle::rel(c.nu.value(u), e.nu), 1e-10) << "u=" << u;
        EXPECT_LE(oracle::rel(c.lambda.value(u), e.lambda), 1e-10) << "u=" << u;
        EXPECT_LE(oracle::rel(c.scalar_curvature.value(u), e.scalar), 1e-10) << "u=" << u;
      }
    }
  }
}

TEST(Closure, ScalarCurvatureAgreesWithGeometry) {
  for (const auto& s : gqe::catalog_structures(4)) {
    const auto closure =
        s.f.is_radial()
            ? gqe::radial_closure(s.phi().profile(), s.f.profile(), 4)
            : gqe::translation_closure(s.phi().profile(), s.f.profile(),
                                       std::get<gqe::Translation>(s.f.kind()).alpha, 4);
    for (const auto& p : gqe::default_grid(s)) {
      if (std::abs(s.phi().value(p.x)) < 1e-6) continue;
      const double S = gqe::scalar_curvature_at(s.metric, p.x);
      EXPECT_NEAR(closure.scalar_curvature.value(p.t), S, 1e-10 * (1 + std::abs(S))) << s.label;
    }
  }
}

TEST(Structure, CatalogResidualOnDefaultGrid) {
  for (int n : {3, 4, 5}) {
    for (const auto& s : gqe::catalog_structures(n)) {
      long evaluated = 0;
      EXPECT_LE(max_residual(s, gqe::default_grid(s), &evaluated), 1e-8) << s.label;
      EXPECT_GT(evaluated, 300) << s.label;
    }
  }
}

TEST(Structure, FlatGaussianHasConstantCoefficients) {
  const GqeStructure s = gqe::flat_gaussian(3, 1.5);
  for (const auto& x : gqe::box_points(3, 10, -2, 2)) {
    EXPECT_EQ(s.nu.value(x), 0.0);
    EXPECT_EQ(s.lambda.value(x), 3.0);
    EXPECT_LE(gqe::residual_at(s, x).max_abs(), 1e-14);
  }
}

// Any bounded non-vanishing φ and strictly monotone f give a structure.
TEST(Structure, ClosureSolvesEquationForArbitraryProfiles) {
  const char* phis[] = {"1/(1+r^2)", "2 + tanh(r)", "exp(-r/3)"};
  const char* fs[] = {"r + r^3/3", "exp(r/4)", "-2*r"};
  for (const char* phi : phis) {
    for (const char* f : fs) {
      const GqeStructure s = gqe::radial_structure(gqe::parse_profile(phi, "r"),
                                                   gqe::parse_profile(f, "r"), 4);
      const auto points = gqe::radial_grid(4, {12, 4, 0.01, 4.0});
      for (const auto& p : points) {
        const double scale = 1 + gqe::metric_at(s.metric, p.x).max_abs();
        EXPECT_LE(gqe::residual_at(s, p.x).max_abs(), 1e-10 * scale) << phi << " / " << f;
      }
      const GqeStructure t = gqe::translation_structure(gqe::parse_profile(phi, "r"),
                                                        gqe::parse_profile(f, "r"),
                                                        {0.5, -1.0, 0.2, 0.0});
      for (const auto& p : gqe::translation_grid({0.5, -1.0, 0.2, 0.0}, {12, 4, 0.1, 3.0})) {
        const double scale = 1 + gqe::metric_at(t.metric, p.x).max_abs();
        EXPECT_LE(gqe::residual_at(t, p.x).max_abs(), 1e-10 * scale) << phi << " / " << f;
      }
    }
  }
}

TEST(Structure, LambdaIsTheTraceFit) {
  for (const auto& s : gqe::catalog_structures(3)) {
    for (const auto& p : gqe::default_grid(s)) {
      if (std::abs(s.phi().value(p.x)) < 1e-6) continue;
      const double lambda = s.lambda.value(p.x);
      const double fitted = gqe::fit_lambda_by_trace(s.metric, s.f, s.nu, p.x);
      EXPECT_LE(std::abs(lambda - fitted), 1e-9 * std::max(1.0, std::abs(lambda))) << s.label;
    }
  }
}

TEST(Wedge, VanishesOnFamilies) {
  for (int n : {3, 4, 5}) {
    for (const auto& s : gqe::catalog_structures(n)) {
      for (const auto& p : gqe::default_grid(s)) {
        if (std::abs(s.phi().value(p.x)) < 1e-6) continue;
        EXPECT_LE(gqe::wedge_invariant_at(s, p.x), 1e-12) << s.label;
      }
    }
  }
}

TEST(Wedge, CounterexampleIsDetected) {
  const GqeStructure s = gqe::wedge_counterexample();
  for (double x2 : {1.0, -0.5, 2.0, 0.0}) {
    const Vector x = {0.7, x2, -1.1};
    EXPECT_NEAR(gqe::wedge_invariant_at(s, x), 8.0 * std::abs(x2), 1e-12);
  }
}

TEST(Structure, DegenerateInputs) {
  const auto closure = gqe::radial_closure(gqe::catalog_profile("gaussian"),
                                           gqe::catalog_profile("square"), 3);
  EXPECT_THROW(closure.nu.value(0.0), gqe::DegenerateInput);
  const auto vanishing = gqe::radial_closure(gqe::parse_profile("1 - r", "r"),
                                             gqe::Profile1D::identity(), 3);
  EXPECT_THROW(vanishing.lambda.value(1.0), gqe::ZeroConformalFactor);
  EXPECT_THROW(gqe::radial_structure(gqe::catalog_profile("gaussian"),
                                     gqe::Profile1D::identity(), 2),
               gqe::InvalidArgument);
  EXPECT_THROW(gqe::require_strictly_monotone(gqe::catalog_profile("square"), -1.0, 1.0),
               gqe::DegenerateInput);
  EXPECT_NO_THROW(gqe::require_strictly_monotone(gqe::catalog_profile("square"), 0.1, 1.0));
}

TEST(Structure, InvertMonotone) {
  const auto cube = [](double t) { return t * t * t; };
  EXPECT_NEAR(gqe::invert_monotone(cube, 8.0, 0.0, 5.0), 2.0, 1e-11);
  const auto dec = [](double t) { return -t; };
  EXPECT_NEAR(gqe::invert_monotone(dec, -0.25, 0.0, 1.0), 0.25, 1e-11);
  EXPECT_THROW(gqe::invert_monotone(cube, 200.0, 0.0, 5.0), gqe::InvalidArgument);
}

TEST(Catalog, DefaultGrids) {
  EXPECT_EQ(gqe::default_grid(gqe::example1(3)).size(), 400u);
  const auto hyp = gqe::default_grid(gqe::hyperbolic_witness(3));
  double lo = 1e9, hi = -1e9;
  for (const auto& p : hyp) {
    lo = std::min(lo, p.t);
    hi = std::max(hi, p.t);
  }
  EXPECT_DOUBLE_EQ(lo, 0.5);
  EXPECT_DOUBLE_EQ(hi, 3.0);
  const auto ex3 = gqe::default_grid(gqe::example3(3));
  EXPECT_DOUBLE_EQ(ex3.front().t, -3.0);
  EXPECT_DOUBLE_EQ(ex3.back().t, 3.0);
}
