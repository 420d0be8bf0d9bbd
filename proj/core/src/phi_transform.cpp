#include "gqe/phi_transform.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <vector>

#include "gqe/error.hpp"

namespace gqe {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

struct PhiTransform::Impl {
  Profile1D v;
  double c1, c2, t0, lo, hi;
  QuadratureOptions options;
  std::vector<double> nodes;
  std::vector<double> v_table;  // ∫_{t0}^{node} v

  // φ at the nodes; built on first use of phi().
  mutable std::once_flag phi_once;
  mutable std::vector<double> phi_table;

  Impl(Profile1D v_, double c1_, double c2_, double t0_, double lo_, double hi_,
       QuadratureOptions opt, int panels)
      : v(std::move(v_)), c1(c1_), c2(c2_), t0(t0_), lo(lo_), hi(hi_), options(opt) {
    nodes.resize(panels + 1);
    for (int k = 0; k <= panels; ++k) nodes[k] = lo + (hi - lo) * k / panels;
    nodes.back() = hi;
    v_table = cumulative([this](double s) { return v.value(s); });
  }

  void check(double t) const {
    if (!(t >= lo && t <= hi)) {
      throw DomainError("phi transform evaluated at " + fmt(t) + " outside its working interval [" +
                        fmt(lo) + ", " + fmt(hi) + "]");
    }
  }

  std::size_t nearest_node(double t) const {
    const double pos = (t - lo) / (hi - lo) * (nodes.size() - 1);
    const auto k = static_cast<long>(std::lround(pos));
    return static_cast<std::size_t>(std::clamp<long>(k, 0, static_cast<long>(nodes.size()) - 1));
  }

  // Table of ∫_{t0}^{node_k} g, accumulated outward from t0 panel by panel.
  std::vector<double> cumulative(const std::function<double(double)>& g) const {
    const std::size_t count = nodes.size();
    std::vector<double> table(count, 0.0);
    std::size_t k0 = 0;
    while (k0 + 1 < count && nodes[k0 + 1] <= t0) ++k0;
    table[k0] = integrate(g, t0, nodes[k0], options);
    for (std::size_t k = k0 + 1; k < count; ++k) {
      table[k] = table[k - 1] + integrate(g, nodes[k - 1], nodes[k], options);
    }
    for (std::size_t k = k0; k-- > 0;) {
      table[k] = table[k + 1] - integrate(g, nodes[k], nodes[k + 1], options);
    }
    return table;
  }

  double v_integral(double t) const {
    const std::size_t k = nearest_node(t);
    return v_table[k] + integrate([this](double s) { return v.value(s); }, nodes[k], t, options);
  }

  double phi_prime(double t) const { return c1 * std::exp(-v_integral(t)); }

  double phi(double t) const {
    std::call_once(phi_once, [this] {
      phi_table = cumulative([this](double s) { return phi_prime(s); });
    });
    const std::size_t k = nearest_node(t);
    return c2 + phi_table[k] +
           integrate([this](double s) { return phi_prime(s); }, nodes[k], t, options);
  }
};

PhiTransform::PhiTransform(Profile1D v, double c1, double c2, double t0, double lo, double hi,
                           QuadratureOptions options, int panels) {
  if (c1 == 0.0) throw DegenerateInput("phi transform requires c1 != 0 (phi would be constant)");
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw InvalidArgument("phi transform working interval must be finite and non-empty");
  }
  if (!(t0 >= lo && t0 <= hi)) {
    throw InvalidArgument("phi transform base point t0 must lie in the working interval");
  }
  if (panels < 1) throw InvalidArgument("phi transform needs at least one panel");
  impl_ = std::make_shared<const Impl>(std::move(v), c1, c2, t0, lo, hi, options, panels);
}

double PhiTransform::c1() const noexcept { return impl_->c1; }
double PhiTransform::c2() const noexcept { return impl_->c2; }
double PhiTransform::t0() const noexcept { return impl_->t0; }
double PhiTransform::lo() const noexcept { return impl_->lo; }
double PhiTransform::hi() const noexcept { return impl_->hi; }
const Profile1D& PhiTransform::v() const noexcept { return impl_->v; }

double PhiTransform::v_integral(double t) const {
  impl_->check(t);
  return impl_->v_integral(t);
}

double PhiTransform::phi(double t) const {
  impl_->check(t);
  return impl_->phi(t);
}

double PhiTransform::phi_prime(double t) const {
  impl_->check(t);
  return impl_->phi_prime(t);
}

double PhiTransform::phi_second(double t) const {
  impl_->check(t);
  return -impl_->v.value(t) * impl_->phi_prime(t);
}

Jet PhiTransform::jet(double t) const {
  Jet j = slope_jet(t);
  j.value = impl_->phi(t);
  return j;
}

Jet PhiTransform::slope_jet(double t) const {
  impl_->check(t);
  const double p1 = impl_->phi_prime(t);
  return {std::numeric_limits<double>::quiet_NaN(), p1, -impl_->v.value(t) * p1};
}

Profile1D PhiTransform::phi_profile() const {
  PhiTransform self = *this;
  return Profile1D([self](double t) { return self.jet(t); }, Interval{lo(), hi()},
                   "phi[" + v().label() + "]");
}

Profile1D PhiTransform::phi_prime_profile() const {
  PhiTransform self = *this;
  return Profile1D::from_values([self](double t) { return self.phi_prime(t); },
                                Interval{lo(), hi()}, "phi'[" + v().label() + "]");
}

double PhiTransform::inverse(double y) const {
  const auto& im = *impl_;
  // Panel search on the node table, then bisection inside the panel.
  std::call_once(im.phi_once, [&im] {
    im.phi_table = im.cumulative([&im](double s) { return im.phi_prime(s); });
  });
  const auto& table = im.phi_table;
  const bool increasing = im.c1 > 0.0;
  const double target = y - im.c2;
  const double first = table.front();
  const double last = table.back();
  if (increasing ? (target < first || target > last) : (target > first || target < last)) {
    throw DomainError("phi inverse: " + fmt(y) + " is outside the range of phi on [" +
                      fmt(im.lo) + ", " + fmt(im.hi) + "]");
  }
  std::size_t k = 0;
  while (k + 2 < table.size() &&
         (increasing ? table[k + 1] < target : table[k + 1] > target)) {
    ++k;
  }
  // Safeguarded Newton inside the panel; φ′ never vanishes.
  double a = im.nodes[k], b = im.nodes[k + 1];
  const double fa = table[k] - target;
  const double fb = table[k + 1] - target;
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  const bool a_negative = fa < 0.0;
  double t = a + (b - a) * fa / (fa - fb);
  for (int it = 0; it < 200; ++it) {
    const double g = im.phi(t) - y;
    if (g == 0.0) return t;
    ((g < 0.0) == a_negative ? a : b) = t;
    double next = t - g / im.phi_prime(t);
    if (!(next > a && next < b)) next = 0.5 * (a + b);
    const double step = std::abs(next - t);
    t = next;
    if (step <= 1e-13 * (1.0 + std::abs(t)) || b - a <= 1e-12) break;
  }
  return t;
}

std::pair<double, double> PhiTransform::range() const {
  const double a = phi(lo());
  const double b = phi(hi());
  return {std::min(a, b), std::max(a, b)};
}

double PhiTransform::ode_residual(double t, double h) const {
  if (!(h > 0.0)) h = 1e-3 * (1.0 + std::abs(t));
  // Five-point stencil for (φ′)′, independent of φ″ = −vφ′.
  const double dp = (-phi_prime(t + 2.0 * h) + 8.0 * phi_prime(t + h) - 8.0 * phi_prime(t - h) +
                     phi_prime(t - 2.0 * h)) /
                    (12.0 * h);
  return dp + impl_->v.value(t) * phi_prime(t);
}

PhiTransform phi_from_v(const Profile1D& v, double c1, double c2, double t0, double lo,
                        double hi) {
  return PhiTransform(v, c1, c2, t0, lo, hi);
}

Profile1D reparametrize_by_potential(const Profile1D& nu, const Profile1D& f, double lo,
                                     double hi) {
  const double flo = f.value(lo);
  const double fhi = f.value(hi);
  if (flo == fhi) throw DegenerateInput("potential is constant on the reparametrization bracket");
  auto fn = [nu, f, lo, hi](double t) {
    // Bisect to the last representable bracket: a looser inverse makes v
    // noisy enough to stall the adaptive quadrature built on it.
    const double s = invert_monotone([&f](double r) { return f.value(r); }, t, lo, hi, 0.0);
    const Jet fj = f.jet(s);
    if (fj.d1 == 0.0) throw DegenerateInput("potential has f' = 0 at " + fmt(s));
    // s(t) = f⁻¹(t): s′ = 1/f′, s″ = −f″/f′³.
    const Jet inv{s, 1.0 / fj.d1, -fj.d2 / (fj.d1 * fj.d1 * fj.d1)};
    return compose(nu.jet(s), inv);
  };
  return Profile1D(std::move(fn), Interval{std::min(flo, fhi), std::max(flo, fhi)},
                   "(" + nu.label() + ")∘(" + f.label() + ")^-1");
}

FieldJet transformed_potential_jet(const GqeStructure& s, const PhiTransform& pt,
                                   std::span<const double> x, bool with_value) {
  const FieldJet fj = s.f.jet(x);
  const Jet outer = with_value ? pt.jet(fj.value) : pt.slope_jet(fj.value);
  return compose(outer, fj);
}

SymTensor transformed_residual_at(const GqeStructure& s, const PhiTransform& pt,
                                  std::span<const double> x) {
  const ConformalPoint p = s.metric.at(x);
  const FieldJet fj = s.f.jet(x);
  const Jet outer = pt.slope_jet(fj.value);
  if (outer.d1 == 0.0) throw DegenerateInput("phi'(f(x)) vanishes");
  const FieldJet u = compose(outer, fj);
  SymTensor r = p.ricci();
  r += (1.0 / outer.d1) * p.hessian(u);
  r -= s.lambda.value(x) * p.metric();
  return r;
}

double traceless_identity_gap(const GqeStructure& s, const PhiTransform& pt,
                              std::span<const double> x) {
  const ConformalPoint p = s.metric.at(x);
  const FieldJet fj = s.f.jet(x);
  const Jet outer = pt.slope_jet(fj.value);
  if (outer.d1 == 0.0) throw DegenerateInput("phi'(f(x)) vanishes");
  const FieldJet u = compose(outer, fj);
  SymTensor gap = p.traceless(p.ricci());
  gap += (1.0 / outer.d1) * p.traceless(p.hessian(u));
  return p.norm(gap);
}

double potential_consistency_gap(const GqeStructure& s, const PhiTransform& pt,
                                 std::span<const double> x) {
  return std::abs(s.nu.value(x) - pt.v().value(s.f.value(x)));
}

}  // namespace gqe
