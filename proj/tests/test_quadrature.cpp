#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "gqe/error.hpp"
#include "gqe/quadrature.hpp"

TEST(Quadrature, ExactForCubics) {
  const auto r = gqe::adaptive_simpson([](double t) { return t * t * t - 2 * t + 1; }, -1, 3);
  EXPECT_NEAR(r.value, 20.0 - 8.0 + 4.0, 1e-13);
  EXPECT_GT(r.evaluations, 0);
}

TEST(Quadrature, SmoothIntegrands) {
  EXPECT_NEAR(gqe::integrate([](double t) { return std::exp(t); }, 0, 2), std::exp(2.0) - 1,
              1e-10);
  gqe::QuadratureOptions tight;
  tight.abs_tol = 1e-14;
  EXPECT_NEAR(gqe::integrate([](double t) { return 4 / (1 + t * t); }, 0, 1, tight),
              std::numbers::pi, 1e-13);
  EXPECT_NEAR(gqe::integrate([](double t) { return std::sin(t); }, 0, std::numbers::pi),
              2.0, 1e-10);
}

TEST(Quadrature, ReversedLimits) {
  const auto f = [](double t) { return t * t; };
  EXPECT_NEAR(gqe::integrate(f, 2, 0), -8.0 / 3, 1e-12);
}

TEST(Quadrature, RelativeTolerance) {
  gqe::QuadratureOptions rel;
  rel.abs_tol = 0;
  rel.rel_tol = 1e-12;
  const double v = gqe::integrate([](double t) { return 1e20 * std::exp(-t); }, 0, 5, rel);
  EXPECT_NEAR(v, 1e20 * (1 - std::exp(-5.0)), 1e-11 * 1e20);
}

TEST(Quadrature, Failures) {
  gqe::QuadratureOptions opts;
  opts.abs_tol = 1e-14;
  opts.max_depth = 12;
  EXPECT_THROW(gqe::integrate([](double t) { return 1 / std::sqrt(t); }, 1e-300, 1, opts),
               gqe::ConvergenceError);
  EXPECT_THROW(gqe::integrate([](double) { return std::numeric_limits<double>::quiet_NaN(); },
                              0, 1),
               gqe::ConvergenceError);
}
