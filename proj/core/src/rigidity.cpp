#include "gqe/rigidity.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "gqe/error.hpp"
#include "gqe/grid.hpp"

namespace gqe {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Vector basis(int n, int i) {
  Vector e(n, 0.0);
  e[i] = 1.0;
  return e;
}

// R̊ic(∇u) as a covector.
Vector traceless_ricci_on_gradient(const ConformalPoint& p, const FieldJet& u) {
  return contract(p.traceless(p.ricci()), p.gradient(u));
}

const Profile1D& radial_profile(const ConformalMetric& m) {
  if (!m.factor().is_radial()) throw InvalidArgument("a radial conformal factor is required");
  return m.factor().profile();
}

}  // namespace

DivergenceGaps divergence_identity_gap(const GqeStructure& s, const PhiTransform& pt,
                                       std::span<const double> x, double h) {
  const int n = s.dim();
  if (!(h > 0.0)) h = derived_field_step(x);

  const VectorField field = [&s, &pt](std::span<const double> y) {
    const ConformalPoint p = s.metric.at(y);
    const FieldJet u = transformed_potential_jet(s, pt, y, false);
    return p.raise(traceless_ricci_on_gradient(p, u));
  };

  const auto scalar = [&s](std::span<const double> y) { return scalar_curvature_at(s.metric, y); };
  Vector ds(n);
  for (int k = 0; k < n; ++k) ds[k] = partial_derivative<double>(scalar, x, k, h);

  const ConformalPoint p = s.metric.at(x);
  const FieldJet u = transformed_potential_jet(s, pt, x, false);
  const double slope = pt.phi_prime(s.f.value(x));
  const SymTensor hess0 = p.traceless(p.hessian(u));

  DivergenceGaps out;
  out.divergence = divergence_g(s.metric, field, x, h);
  out.scalar_term = (n - 2.0) / (2.0 * n) * p.inner_covectors(ds, u.gradient);
  out.ricci_term = p.inner(p.ricci(), hess0);
  out.hessian_term = p.inner(hess0, hess0) / slope;
  out.general_gap = std::abs(out.divergence - out.scalar_term - out.ricci_term);
  out.constant_s_gap = std::abs(out.divergence + out.hessian_term);
  return out;
}

SphereWitness make_sphere_witness(int n, const PhiTransform& pt, double c, double r_max) {
  if (n < 3) throw InvalidArgument("sphere witness requires n >= 3");
  const Profile1D height = catalog_profile("height");

  // c − h/n runs from c + 1/n at the origin down to c − h(r_max)/n.
  const double w_hi = c + 1.0 / n;
  const double w_lo = c - height.value(r_max) / n;
  const auto [phi_lo, phi_hi] = pt.range();
  if (!(w_lo > phi_lo && w_hi < phi_hi)) {
    throw DomainError("sphere witness: c - h/n spans [" + fmt(w_lo) + ", " + fmt(w_hi) +
                      "], outside the range (" + fmt(phi_lo) + ", " + fmt(phi_hi) +
                      ") of the transform");
  }

  // f = φ⁻¹(w): f′ = w′/φ′(f), f″ = (w″ − φ″(f) f′²)/φ′(f).
  auto f_jet = [pt, height, c, n](double r) {
    const Jet hj = height.jet(r);
    const double w = c - hj.value / n;
    const double w1 = -hj.d1 / n;
    const double w2 = -hj.d2 / n;
    const double t = pt.inverse(w);
    const Jet p = pt.slope_jet(t);
    const double f1 = w1 / p.d1;
    return Jet{t, f1, (w2 - p.d2 * f1 * f1) / p.d1};
  };
  const Profile1D f(f_jet, Interval{-1.0, INFINITY}, "phi_T^-1(c - h/n)");
  const Profile1D nu = compose(pt.v(), f);

  const ScalarField phi = ScalarField::radial(catalog_profile("sphere_chart"), n);
  const ScalarField f_field = ScalarField::radial(f, n);
  const ScalarField nu_field = ScalarField::radial(nu, n);
  const ConformalMetric metric(phi);
  const ScalarField lambda = ScalarField::explicit_field(
      [metric, f_field, nu_field](std::span<const double> x) {
        return fit_lambda_by_trace(metric, f_field, nu_field, x);
      },
      n, "trace-fitted lambda");

  return SphereWitness{n, c, pt, ScalarField::radial(height, n),
                       make_structure(phi, f_field, nu_field, lambda, "sphere_witness")};
}

VerificationReport sphere_witness_verify(int n, const Profile1D& v, double c,
                                         std::span<const Vector> points,
                                         const SphereWitnessOptions& o) {
  const PhiTransform pt(v, o.c1, o.c2, o.t0, o.lo, o.hi);
  const SphereWitness w = make_sphere_witness(n, pt, c);
  const GqeStructure& s = w.structure;
  const double nn1 = n * (n - 1.0);

  VerificationReport report;
  auto& residual = report.add_check("residual", o.residual_tol);
  auto& height = report.add_check("height_identity", o.height_tol);
  auto& hessian_c = report.add_check("hessian_constant", o.hessian_tol);
  auto& hessian_dev = report.add_check("hessian_deviation", o.hessian_tol);
  auto& lambda = report.add_check("lambda_closed_form", o.lambda_tol);
  auto& scalar = report.add_check("scalar_curvature", o.curvature_tol);
  auto& einstein = report.add_check("einstein", o.einstein_tol);
  auto& transformed = report.add_check("transformed_residual", o.transformed_tol);
  auto& traceless = report.add_check("traceless_gap", o.transformed_tol);
  auto& div_general = report.add_check("divergence_general", o.divergence_tol);
  auto& div_const = report.add_check("divergence_constant_s", o.divergence_tol);

  struct HessianSample {
    SymTensor a;  // ∇²u + (Su/(n(n−1))) g
    SymTensor g;
    SymTensor hess;
    double su;
  };
  std::vector<HessianSample> samples;
  double num = 0.0, den = 0.0;

  for (const Vector& x : points) {
    const ConformalPoint p = s.metric.at(x);
    const SymTensor g = p.metric();
    residual.add(residual_at(s, x).max_abs());

    const FieldJet hj = w.height.jet(x);
    height.add(p.norm(p.hessian(hj) + hj.value * g));

    const double S = p.scalar_curvature();
    scalar.add(std::abs(S - nn1));
    einstein.add(p.norm(p.traceless(p.ricci())));

    const FieldJet u = transformed_potential_jet(s, pt, x, true);
    const SymTensor hess = p.hessian(u);
    const double su = S * u.value / nn1;
    HessianSample l{hess + su * g, g, hess, su};
    for (int i = 0; i < n; ++i) {
      num += l.a(i, i) * g(i, i);
      den += g(i, i) * g(i, i);
    }
    samples.push_back(std::move(l));

    const double expected_lambda = (n - 1.0) + hj.value / (n * pt.phi_prime(s.f.value(x)));
    lambda.add(std::abs(s.lambda.value(x) - expected_lambda));

    transformed.add(transformed_residual_at(s, pt, x).max_abs());
    traceless.add(traceless_identity_gap(s, pt, x));
    const DivergenceGaps d = divergence_identity_gap(s, pt, x);
    div_general.add(d.general_gap);
    div_const.add(d.constant_s_gap);
  }

  const double c_tilde = den > 0.0 ? num / den : std::numeric_limits<double>::quiet_NaN();
  hessian_c.add(std::abs(c_tilde - c));
  for (const HessianSample& l : samples) {
    SymTensor dev = l.hess - (c_tilde - l.su) * l.g;
    // ‖·‖_g with the metric at that point: g = δ/φ², so ‖T‖_g = ‖T‖_F / g₀₀.
    hessian_dev.add(dev.frobenius() / l.g(0, 0));
  }
  report.set_value("c_tilde", c_tilde);
  report.set_value("c", c);
  report.set_value("n", n);
  return report;
}

ModelKind parse_model_kind(const std::string& name) {
  if (name == "euclidean") return ModelKind::Euclidean;
  if (name == "hyperbolic" || name == "hyperbolic-half-space") return ModelKind::HyperbolicHalfSpace;
  if (name == "warped" || name == "warped-flat-fiber") return ModelKind::WarpedFlatFiber;
  throw InvalidArgument("unknown model space '" + name +
                        "' (expected euclidean, hyperbolic or warped)");
}

std::string model_kind_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::Euclidean:
      return "euclidean";
    case ModelKind::HyperbolicHalfSpace:
      return "hyperbolic";
    case ModelKind::WarpedFlatFiber:
      return "warped";
  }
  return "unknown";
}

ModelSpace model_space(ModelKind kind, double param, int n) {
  if (n < 3) throw InvalidArgument("model spaces require n >= 3");
  const double nn1 = n * (n - 1.0);
  auto half_space = [n](double scale) {
    const Profile1D p =
        affine(Profile1D::identity(), scale, 0.0).with_domain(Interval{0.0, INFINITY});
    return ConformalMetric(ScalarField::translation(p, basis(n, n - 1)));
  };

  ModelSpace m{kind, param, n, ConformalMetric(ScalarField::constant(1.0, n)), 0.0,
               model_kind_name(kind)};
  switch (kind) {
    case ModelKind::Euclidean:
      break;
    case ModelKind::HyperbolicHalfSpace:
      if (!(param > 0.0) || !std::isfinite(param)) {
        throw InvalidArgument("hyperbolic half-space needs rho > 0");
      }
      m.chart = half_space(1.0 / param);
      m.expected_scalar_curvature = -nn1 / (param * param);
      break;
    case ModelKind::WarpedFlatFiber:
      if (!std::isfinite(param)) throw InvalidArgument("warped product needs a finite k");
      if (param != 0.0) m.chart = half_space(std::abs(param));
      m.expected_scalar_curvature = -nn1 * param * param;
      break;
  }

  for (const Vector& x : model_sample_points(m, 8, kDefaultSeed)) {
    const double S = scalar_curvature_at(m.chart, x);
    if (std::abs(S - m.expected_scalar_curvature) >
        1e-9 * std::max(1.0, std::abs(m.expected_scalar_curvature))) {
      throw Error("model space " + m.name + ": chart scalar curvature " + fmt(S) +
                  " differs from expected " + fmt(m.expected_scalar_curvature));
    }
  }
  return m;
}

std::vector<Vector> model_sample_points(const ModelSpace& m, int count, std::uint64_t seed) {
  Vector lo(m.n, -1.0), hi(m.n, 1.0);
  if (m.chart.factor().is_translation()) {
    lo[m.n - 1] = 0.5;
    hi[m.n - 1] = 2.5;
  }
  return box_points(lo, hi, count, seed);
}

double geodesic_radius(const ConformalMetric& m, double rho) {
  const Profile1D& p = radial_profile(m);
  QuadratureOptions opt;
  opt.abs_tol = 1e-14;
  opt.rel_tol = 1e-12;
  const auto inv = [&p](double t) { return 1.0 / std::abs(p.value(t * t)); };
  // Dyadic panels out to ρ, then panels graded geometrically toward ρ so a
  // blow-up of 1/φ at the edge of the chart stays resolvable.
  double total = 0.0;
  double a = 0.0;
  for (double b = 1.0; b < rho; b *= 2.0) {
    total += integrate(inv, a, b, opt);
    a = b;
  }
  const double width = rho - a;
  for (int k = 1; k <= 48; ++k) {
    const double b = rho - width * std::ldexp(1.0, -k);
    total += integrate(inv, a, b, opt);
    a = b;
  }
  return total + integrate(inv, a, rho, opt);
}

double karp_annulus(const GqeStructure& s, const PhiTransform& pt, double r_g,
                    const KarpOptions& options) {
  if (!(r_g > 0.0) || !std::isfinite(r_g)) throw InvalidArgument("karp_annulus needs r_g > 0");
  if (!s.f.is_radial()) throw InvalidArgument("karp_annulus needs a radial potential");
  const Profile1D& p = radial_profile(s.metric);
  const int n = s.dim();

  const double phi0 = p.value(0.0);
  auto admissible = [&](double rho) {
    const double r = rho * rho;
    if (!p.domain().contains(r)) return false;
    double v;
    try {
      v = p.value(r);
    } catch (const Error&) {
      return false;
    }
    return (v > 0.0) == (phi0 > 0.0) && std::abs(v) > kMinConformalFactor &&
           std::isfinite(1.0 / v);
  };
  auto dist = [&](double rho) { return geodesic_radius(s.metric, rho); };

  // Bracket ρ(2r_g), stopping at the edge of the chart.
  const double target = 2.0 * r_g;
  double good = 0.0;
  double rho = 1.0;
  double rho_max = 0.0;
  for (;;) {
    if (admissible(rho)) {
      if (dist(rho) >= target) {
        rho_max = rho;
        break;
      }
      good = rho;
      rho *= 2.0;
      if (rho > 1e15) throw DomainError("karp_annulus: chart exhausted: geodesic radius stays below " +
                                              fmt(target));
      continue;
    }
    double lo = good, hi = rho;
    for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      (admissible(mid) ? lo : hi) = mid;
    }
    const double edge = lo - 1e-9 * std::max(1.0, lo);
    if (!(edge > 0.0) || dist(edge) < target) {
      throw DomainError("karp_annulus: chart exhausted at Euclidean radius " + fmt(lo) +
                        " before geodesic radius " + fmt(target));
    }
    rho_max = edge;
    break;
  }

  const double rho1 = invert_monotone(dist, r_g, 0.0, rho_max, 1e-13);
  const double rho2 = invert_monotone(dist, target, 0.0, rho_max, 1e-13);

  auto integrand = [&](double t) {
    Vector x(n, 0.0);
    x[0] = t;
    const ConformalPoint cp = s.metric.at(x);
    const FieldJet u = transformed_potential_jet(s, pt, x, false);
    const double k = cp.norm_covector(traceless_ricci_on_gradient(cp, u));
    return k * std::pow(std::abs(cp.phi()), -n) * std::pow(t, n - 1);
  };
  QuadratureOptions opt;
  opt.abs_tol = options.quad_abs_tol;
  opt.rel_tol = options.quad_rel_tol;
  const double omega = 2.0 * std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0);
  return omega / r_g * integrate(integrand, rho1, rho2, opt);
}

double ray_length(const ConformalMetric& m, std::span<const double> origin,
                  std::span<const double> direction, double T) {
  const int n = m.dim();
  if (static_cast<int>(origin.size()) != n || static_cast<int>(direction.size()) != n) {
    throw InvalidArgument("ray origin and direction must have n components");
  }
  if (!(T >= 0.0) || !std::isfinite(T)) throw InvalidArgument("ray length needs finite T >= 0");
  const double len = norm2(direction);
  if (!(len > 0.0)) throw DegenerateInput("ray direction must be nonzero");

  Vector x(n);
  auto phi_at = [&](double t) {
    for (int i = 0; i < n; ++i) x[i] = origin[i] + t * direction[i] / len;
    return m.factor().value(x);
  };

  constexpr int kSamples = 4096;
  int sign = 0;
  bool vanishes = false;
  for (int k = 0; k <= kSamples; ++k) {
    const double t = T * k / kSamples;
    const double v = phi_at(t);
    const int sg = (v > 0.0) - (v < 0.0);
    if (sg != 0) {
      if (sign != 0 && sg != sign) {
        throw ZeroConformalFactor("conformal factor changes sign along the ray near t = " +
                                  fmt(t));
      }
      sign = sg;
    }
    if (sg == 0 || !std::isfinite(1.0 / v)) vanishes = true;
  }
  if (vanishes) return std::numeric_limits<double>::infinity();

  QuadratureOptions opt;
  opt.abs_tol = 1e-13;
  opt.rel_tol = 1e-12;
  constexpr int kPanels = 64;
  double total = 0.0;
  for (int k = 0; k < kPanels; ++k) {
    total += integrate([&](double t) { return 1.0 / std::abs(phi_at(t)); }, T * k / kPanels,
                       T * (k + 1) / kPanels, opt);
  }
  return total;
}

double ray_length(const GqeStructure& s, std::span<const double> direction, double T) {
  const Vector origin(s.dim(), 0.0);
  return ray_length(s.metric, origin, direction, T);
}

}  // namespace gqe
