#include "gqe/catalog.hpp"

#include <algorithm>
#include <cmath>

#include "gqe/error.hpp"

namespace gqe {

namespace {

Profile1D linear(double c) {
  return c == 1.0 ? Profile1D::identity() : affine(Profile1D::identity(), c, 0.0);
}

Vector basis(int n, int i) {
  Vector e(n, 0.0);
  e[i] = 1.0;
  return e;
}

}  // namespace

GqeStructure example1(int n, double c) {
  if (c == 0.0) throw DegenerateInput("example 1 needs c != 0");
  return radial_structure(catalog_profile("gaussian"), linear(c), n, "example1");
}

GqeStructure example2(int n, double c) {
  if (c == 0.0) throw DegenerateInput("example 2 needs c != 0");
  return radial_structure(catalog_profile("inverse_linear"), linear(c), n, "example2");
}

GqeStructure example3(const Vector& alpha) {
  return translation_structure(catalog_profile("one_plus_tanh"), Profile1D::identity(), alpha,
                               "example3");
}

GqeStructure example3(int n) { return example3(basis(n, 0)); }

GqeStructure flat_gaussian(int n, double c) {
  return make_structure(ScalarField::constant(1.0, n), ScalarField::radial(linear(c), n),
                        ScalarField::constant(0.0, n), ScalarField::constant(2.0 * c, n),
                        "flat_gaussian");
}

GqeStructure hyperbolic_witness(int n) {
  const Profile1D u = Profile1D::identity().with_domain(Interval{0.0, INFINITY});
  return translation_structure(u, u, basis(n, n - 1), "hyperbolic_witness");
}

GqeStructure wedge_counterexample() {
  constexpr int n = 3;
  auto f = ScalarField::explicit_jet_field(
      [](std::span<const double> x) {
        FieldJet j{x[0] + x[1] * x[1], {1.0, 2.0 * x[1], 0.0}, SymTensor(n)};
        j.hessian.set(1, 1, 2.0);
        return j;
      },
      n, "x1 + x2^2");
  auto nu = ScalarField::explicit_jet_field(
      [](std::span<const double> x) { return FieldJet{x[2], {0.0, 0.0, 1.0}, SymTensor(n)}; },
      n, "x3");
  return make_structure(ScalarField::constant(1.0, n), f, nu, ScalarField::constant(0.0, n),
                        "wedge_counterexample");
}

std::vector<GqeStructure> catalog_structures(int n) {
  return {example1(n), example2(n), example3(n), flat_gaussian(n), hyperbolic_witness(n)};
}

namespace {

TranslationGridSpec translation_spec(const GqeStructure& s) {
  TranslationGridSpec spec;
  if (s.phi().is_translation()) {
    const Interval dom = s.phi().profile().domain();
    spec.u_min = std::max(spec.u_min, dom.lo + 0.5);
    spec.u_max = std::min(spec.u_max, dom.hi - 0.5);
  }
  return spec;
}

}  // namespace

std::vector<GridPoint> default_grid(const GqeStructure& s, std::uint64_t seed) {
  if (s.f.is_translation()) {
    return translation_grid(std::get<Translation>(s.f.kind()).alpha, translation_spec(s), seed);
  }
  return radial_grid(s.dim(), RadialGridSpec{}, seed);
}

std::pair<double, double> default_grid_range(const GqeStructure& s) {
  if (s.f.is_translation()) {
    const TranslationGridSpec spec = translation_spec(s);
    return {spec.u_min, spec.u_max};
  }
  const RadialGridSpec spec;
  return {0.0, spec.r_max};
}

PhiTransform potential_transform(const GqeStructure& s, double lo, double hi, double c1,
                                 double c2) {
  if (s.f.is_explicit() || s.nu.is_explicit()) {
    throw InvalidArgument("potential_transform needs profile fields for f and nu");
  }
  if (s.f.is_radial() != s.nu.is_radial()) {
    throw InvalidArgument("f and nu must share a symmetry variable");
  }
  if (!(lo < hi)) throw InvalidArgument("potential_transform needs lo < hi");
  const Profile1D& f = s.f.profile();
  const double pad = 0.05 * (hi - lo);
  const Profile1D v = reparametrize_by_potential(s.nu.profile(), f, lo - 2.0 * pad, hi + 2.0 * pad);
  const double a = f.value(lo);
  const double b = f.value(hi);
  const double t0 = std::min(a, b);
  const double a_pad = f.value(lo - pad);
  const double b_pad = f.value(hi + pad);
  return PhiTransform(v, c1, c2, t0, std::min(a_pad, b_pad), std::max(a_pad, b_pad));
}

ConformalMetric euclidean_metric(int n) { return ConformalMetric(ScalarField::constant(1.0, n)); }

ConformalMetric sphere_chart_metric(int n) {
  return ConformalMetric(ScalarField::radial(catalog_profile("sphere_chart"), n));
}

ConformalMetric ball_chart_metric(int n) {
  return ConformalMetric(ScalarField::radial(
      catalog_profile("ball_chart").with_domain(Interval{-INFINITY, 1.0}), n));
}

ConformalMetric half_space_metric(int n, double rho) {
  if (!(rho > 0.0)) throw InvalidArgument("half-space scale rho must be positive");
  const Profile1D p = affine(Profile1D::identity(), 1.0 / rho, 0.0).with_domain(Interval{0.0, INFINITY});
  return ConformalMetric(ScalarField::translation(p, basis(n, n - 1)));
}

ConformalMetric example1_metric(int n) {
  return ConformalMetric(ScalarField::radial(catalog_profile("gaussian"), n));
}

ClosedForm example1_closed_form(int n, double c, double r) {
  const double e = std::exp(-r * r);
  return {
      (n * r * r - 2.0 * c * r - 2.0 * r * r - n + 2.0) / (c * c),
      4.0 * e * r * (-n * r * r + c * r + 2.0 * r * r - n) + 2.0 * c * e,
      -4.0 * (n - 1.0) * e * r * (n * r * r - 2.0 * r * r + n + 2.0),
  };
}

ClosedForm example2_closed_form(int n, double c, double r) {
  const double q = 1.0 + r;
  const double q2 = q * q;
  const double q4 = q2 * q2;
  return {
      2.0 / (c * c * q2) * (n - 2.0 - c * q),
      4.0 / q4 * (c * r * q - 2.0 * r * (n - 2.0) - n + 1.0) + 2.0 * c / q2,
      4.0 * (n - 1.0) / q4 * (4.0 * r - 2.0 * n * r - n),
  };
}

ClosedForm example3_closed_form(int n, double a, double u) {
  const double t = std::tanh(u);
  const double ch = std::cosh(u);
  const double ch2 = ch * ch;
  return {
      2.0 * (1.0 - (n - 2.0) * t) / (ch2 * (1.0 + t)),
      a / ch2 * ((n - 3.0) * t * t - 3.0 * t - n),
      a * (n - 1.0) / ch2 * ((n - 4.0) * t * t - 4.0 * t - n),
  };
}

}  // namespace gqe
