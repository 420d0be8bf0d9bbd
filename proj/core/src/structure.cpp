#include "gqe/structure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "gqe/error.hpp"

namespace gqe {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct FamilyJets {
  Jet phi;
  Jet f;
};

FamilyJets family_jets(const Profile1D& phi, const Profile1D& f, double t) {
  FamilyJets j{phi.jet(t), f.jet(t)};
  if (!(std::abs(j.phi.value) > kMinConformalFactor)) {
    throw ZeroConformalFactor("conformal factor vanishes at t = " + fmt(t));
  }
  if (j.f.d1 == 0.0) {
    throw DegenerateInput("potential is not strictly monotone: f'(" + fmt(t) + ") = 0");
  }
  return j;
}

double closure_nu(const FamilyJets& j, int n) {
  const double p = j.phi.value;
  const double fp = j.f.d1;
  return ((n - 2.0) * j.phi.d2 / p + j.f.d2 + 2.0 * fp * j.phi.d1 / p) / (fp * fp);
}

Interval intersect(const Interval& a, const Interval& b) {
  return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

}  // namespace

GqeStructure make_structure(ScalarField phi, ScalarField f, ScalarField nu, ScalarField lambda,
                            std::string label) {
  const int n = phi.dim();
  if (n < 3) throw InvalidArgument("GQE structure requires n >= 3");
  if (f.dim() != n || nu.dim() != n || lambda.dim() != n) {
    throw InvalidArgument("GQE structure fields must share the dimension of phi");
  }
  return GqeStructure{ConformalMetric(std::move(phi)), std::move(f), std::move(nu),
                      std::move(lambda), std::move(label)};
}

SymTensor residual_at(const GqeStructure& s, std::span<const double> x) {
  const ConformalPoint p = s.metric.at(x);
  const FieldJet fj = s.f.jet(x);
  SymTensor r = p.ricci();
  r += p.hessian(fj);
  r -= s.nu.value(x) * SymTensor::outer(fj.gradient);
  r -= s.lambda.value(x) * p.metric();
  return r;
}

ClosureProfiles radial_closure(const Profile1D& phi, const Profile1D& f, int n) {
  if (n < 3) throw InvalidArgument("radial closure requires n >= 3");
  const Interval dom = intersect(phi.domain(), f.domain());
  auto nu = [=](double r) { return closure_nu(family_jets(phi, f, r), n); };
  auto lambda = [=](double r) {
    const FamilyJets j = family_jets(phi, f, r);
    const double p = j.phi.value, p1 = j.phi.d1, p2 = j.phi.d2, f1 = j.f.d1;
    return 4.0 * ((n - 1.0) * p1 * (p - r * p1) + r * p * (p2 - f1 * p1)) + 2.0 * f1 * p * p;
  };
  auto scalar = [=](double r) {
    const Jet j = phi.jet(r);
    const double p = j.value, p1 = j.d1, p2 = j.d2;
    return 4.0 * (n - 1.0) * (2.0 * r * p * p2 - n * r * p1 * p1 + n * p * p1);
  };
  const std::string tag = "[" + phi.label() + ", " + f.label() + ", n=" + std::to_string(n) + "]";
  return ClosureProfiles{
      Profile1D::from_values(nu, dom, "nu_radial" + tag),
      Profile1D::from_values(lambda, dom, "lambda_radial" + tag),
      Profile1D::from_values(scalar, phi.domain(), "S_radial" + tag),
  };
}

ClosureProfiles translation_closure(const Profile1D& phi, const Profile1D& f,
                                    const Vector& alpha, int n) {
  if (n < 3) throw InvalidArgument("translation closure requires n >= 3");
  if (static_cast<int>(alpha.size()) != n) {
    throw InvalidArgument("translation direction must have n components");
  }
  const double a = dot(alpha, alpha);
  if (!(a > 0.0)) throw DegenerateInput("translation direction must satisfy a > 0");
  const Interval dom = intersect(phi.domain(), f.domain());
  auto nu = [=](double u) { return closure_nu(family_jets(phi, f, u), n); };
  auto lambda = [=](double u) {
    const FamilyJets j = family_jets(phi, f, u);
    const double p = j.phi.value, p1 = j.phi.d1, p2 = j.phi.d2, f1 = j.f.d1;
    return a * (p * p2 - f1 * p * p1 - (n - 1.0) * p1 * p1);
  };
  auto scalar = [=](double u) {
    const Jet j = phi.jet(u);
    return a * (n - 1.0) * (2.0 * j.value * j.d2 - n * j.d1 * j.d1);
  };
  const std::string tag = "[" + phi.label() + ", " + f.label() + ", n=" + std::to_string(n) + "]";
  return ClosureProfiles{
      Profile1D::from_values(nu, dom, "nu_translation" + tag),
      Profile1D::from_values(lambda, dom, "lambda_translation" + tag),
      Profile1D::from_values(scalar, phi.domain(), "S_translation" + tag),
  };
}

GqeStructure radial_structure(const Profile1D& phi, const Profile1D& f, int n,
                              std::string label) {
  ClosureProfiles c = radial_closure(phi, f, n);
  return make_structure(ScalarField::radial(phi, n), ScalarField::radial(f, n),
                        ScalarField::radial(c.nu, n), ScalarField::radial(c.lambda, n),
                        label.empty() ? "radial[" + phi.label() + ", " + f.label() + "]" : label);
}

GqeStructure translation_structure(const Profile1D& phi, const Profile1D& f,
                                   const Vector& alpha, std::string label) {
  const int n = static_cast<int>(alpha.size());
  ClosureProfiles c = translation_closure(phi, f, alpha, n);
  return make_structure(
      ScalarField::translation(phi, alpha), ScalarField::translation(f, alpha),
      ScalarField::translation(c.nu, alpha), ScalarField::translation(c.lambda, alpha),
      label.empty() ? "translation[" + phi.label() + ", " + f.label() + "]" : label);
}

double wedge_invariant_at(const GqeStructure& s, std::span<const double> x) {
  const int n = s.dim();
  const FieldJet phi = s.phi().jet(x);
  const FieldJet fj = s.f.jet(x);
  const FieldJet nuj = s.nu.jet(x);

  // N = ‖∇f‖²_g = φ² Σ f_k²;  ∂ᵢN = 2φφᵢ Σ f_k² + 2φ² Σ_k f_k f_ki.
  const double grad_sq = dot(fj.gradient, fj.gradient);
  Vector dn(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double s_fk_fki = 0.0;
    for (int k = 0; k < n; ++k) s_fk_fki += fj.gradient[k] * fj.hessian(k, i);
    dn[i] = 2.0 * phi.value * phi.gradient[i] * grad_sq +
            2.0 * phi.value * phi.value * s_fk_fki;
  }
  const Vector& dnu = nuj.gradient;
  const Vector& df = fj.gradient;

  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        const double det = dn[i] * (dnu[j] * df[k] - dnu[k] * df[j]) -
                           dn[j] * (dnu[i] * df[k] - dnu[k] * df[i]) +
                           dn[k] * (dnu[i] * df[j] - dnu[j] * df[i]);
        worst = std::max(worst, std::abs(det));
      }
    }
  }
  return worst;
}

double fit_lambda_by_trace(const ConformalMetric& metric, const ScalarField& f,
                           const ScalarField& nu, std::span<const double> x) {
  const ConformalPoint p = metric.at(x);
  const FieldJet fj = f.jet(x);
  const double grad_sq_g = p.inner_covectors(fj.gradient, fj.gradient);
  return (p.scalar_curvature() + p.laplacian(fj) - nu.value(x) * grad_sq_g) / p.dim();
}

double invert_monotone(const std::function<double(double)>& fn, double target, double lo,
                       double hi, double tol) {
  if (!(lo < hi)) throw InvalidArgument("invert_monotone: empty bracket");
  double glo = fn(lo) - target;
  const double ghi = fn(hi) - target;
  if (glo == 0.0) return lo;
  if (ghi == 0.0) return hi;
  if ((glo < 0.0) == (ghi < 0.0)) {
    throw InvalidArgument("invert_monotone: target " + fmt(target) + " not bracketed by [" +
                          fmt(lo) + ", " + fmt(hi) + "]");
  }
  for (int it = 0; it < 2000 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double gm = fn(mid) - target;
    if (gm == 0.0) return mid;
    if ((gm < 0.0) == (glo < 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

void require_strictly_monotone(const Profile1D& p, double lo, double hi, int samples) {
  if (samples < 2) samples = 2;
  int sign = 0;
  for (int k = 0; k < samples; ++k) {
    const double t = lo + (hi - lo) * k / (samples - 1);
    const double d = p.d1(t);
    const int s = (d > 0.0) - (d < 0.0);
    if (s == 0 || (sign != 0 && s != sign)) {
      throw DegenerateInput("profile '" + p.label() + "' is not strictly monotone near t = " +
                            fmt(t));
    }
    sign = s;
  }
}

}  // namespace gqe
