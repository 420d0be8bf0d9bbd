#include "gqe/profile.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <utility>

#include "gqe/error.hpp"

namespace gqe {

namespace {

std::string format_t(double t) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", t);
  return buf;
}

Interval intersect(const Interval& a, const Interval& b) {
  return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

struct CatalogEntry {
  std::string_view name;
  Interval domain;
  Jet (*fn)(double);
};

Jet cat_zero(double) { return Jet::constant(0.0); }
Jet cat_one(double) { return Jet::constant(1.0); }
Jet cat_identity(double t) { return Jet::variable(t); }
Jet cat_square(double t) { return {t * t, 2.0 * t, 2.0}; }
Jet cat_gaussian(double t) {
  const double e = std::exp(-0.5 * t * t);
  return {e, -t * e, (t * t - 1.0) * e};
}
Jet cat_inverse_linear(double t) {
  const double s = 1.0 / (1.0 + t);
  return {s, -s * s, 2.0 * s * s * s};
}
Jet cat_one_plus_tanh(double t) {
  // 1 + tanh t = 2/(1 + e^{−2t}) and sech²t = 4e^{−2|t|}/(1 + e^{−2|t|})²
  // avoid the cancellation in 1 + tanh t for t ≪ 0.
  const double th = std::tanh(t);
  const double e = std::exp(-2.0 * std::abs(t));
  const double sech2 = 4.0 * e / ((1.0 + e) * (1.0 + e));
  return {2.0 / (1.0 + std::exp(-2.0 * t)), sech2, -2.0 * th * sech2};
}
Jet cat_sphere_chart(double t) { return {0.5 * (1.0 + t), 0.5, 0.0}; }
Jet cat_ball_chart(double t) { return {0.5 * (1.0 - t), -0.5, 0.0}; }
Jet cat_height(double t) {
  const double s = 1.0 / (1.0 + t);
  return {(t - 1.0) * s, 2.0 * s * s, -4.0 * s * s * s};
}

constexpr double kInf = std::numeric_limits<double>::infinity();

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries{
      {"zero", {-kInf, kInf}, cat_zero},
      {"one", {-kInf, kInf}, cat_one},
      {"identity", {-kInf, kInf}, cat_identity},
      {"square", {-kInf, kInf}, cat_square},
      {"gaussian", {-kInf, kInf}, cat_gaussian},
      {"inverse_linear", {-1.0, kInf}, cat_inverse_linear},
      {"one_plus_tanh", {-kInf, kInf}, cat_one_plus_tanh},
      {"sphere_chart", {-kInf, kInf}, cat_sphere_chart},
      {"ball_chart", {-kInf, kInf}, cat_ball_chart},
      {"height", {-1.0, kInf}, cat_height},
  };
  return entries;
}

}  // namespace

Profile1D::Profile1D(JetFn fn, Interval domain, std::string label)
    : fn_(std::move(fn)), domain_(domain), label_(std::move(label)) {
  if (!fn_) throw InvalidArgument("profile requires a callable");
  if (!(domain_.lo < domain_.hi)) throw InvalidArgument("profile domain is empty");
}

Profile1D Profile1D::constant(double c) {
  return Profile1D([c](double) { return Jet::constant(c); }, Interval::real_line(),
                   format_t(c));
}

Profile1D Profile1D::identity() {
  return Profile1D([](double t) { return Jet::variable(t); }, Interval::real_line(), "t");
}

Profile1D Profile1D::from_values(std::function<double(double)> value, Interval domain,
                                 std::string label, double rel_step) {
  if (!value) throw InvalidArgument("profile requires a callable");
  auto fn = [value = std::move(value), rel_step](double t) {
    const double h = rel_step * (1.0 + std::abs(t));
    const double f0 = value(t);
    const double fp = value(t + h);
    const double fm = value(t - h);
    return Jet{f0, (fp - fm) / (2.0 * h), (fp - 2.0 * f0 + fm) / (h * h)};
  };
  return Profile1D(std::move(fn), domain, std::move(label));
}

Jet Profile1D::jet(double t) const {
  if (!domain_.contains(t)) {
    throw DomainError("profile '" + label_ + "' evaluated at " + format_t(t) +
                      " outside its domain (" + format_t(domain_.lo) + ", " +
                      format_t(domain_.hi) + ")");
  }
  return fn_(t);
}

Profile1D Profile1D::with_domain(Interval domain) const {
  return Profile1D(fn_, domain, label_);
}

Profile1D compose(const Profile1D& outer, const Profile1D& inner) {
  auto fn = [outer, inner](double t) {
    const Jet in = inner.jet(t);
    return gqe::compose(outer.jet(in.value), in);
  };
  return Profile1D(std::move(fn), inner.domain(), outer.label() + "∘" + inner.label());
}

Profile1D affine(const Profile1D& p, double scale, double shift) {
  auto fn = [p, scale, shift](double t) {
    const Jet j = p.jet(t);
    return Jet{scale * j.value + shift, scale * j.d1, scale * j.d2};
  };
  return Profile1D(std::move(fn), p.domain(),
                   format_t(scale) + "*(" + p.label() + ")+" + format_t(shift));
}

Profile1D multiply(const Profile1D& a, const Profile1D& b) {
  auto fn = [a, b](double t) { return a.jet(t) * b.jet(t); };
  return Profile1D(std::move(fn), intersect(a.domain(), b.domain()),
                   "(" + a.label() + ")*(" + b.label() + ")");
}

Profile1D parse_profile(std::string_view text, std::string_view varname, Interval domain) {
  const Expression expr = Expression::parse(text, varname);
  auto fn = [expr](double t) { return expr.evaluate_jet(t); };
  return Profile1D(std::move(fn), domain, expr.to_string());
}

Jet profile_derivatives(const Profile1D& p, double t) { return p.jet(t); }

Profile1D catalog_profile(std::string_view name) {
  for (const auto& e : catalog()) {
    if (e.name == name) return Profile1D(e.fn, e.domain, std::string(e.name));
  }
  throw InvalidArgument("unknown catalog profile '" + std::string(name) + "'");
}

std::vector<std::string> catalog_profile_names() {
  std::vector<std::string> names;
  for (const auto& e : catalog()) names.emplace_back(e.name);
  return names;
}

bool is_catalog_profile(std::string_view name) {
  for (const auto& e : catalog()) {
    if (e.name == name) return true;
  }
  return false;
}

Profile1D resolve_profile(std::string_view spec, std::string_view varname, Interval domain) {
  if (is_catalog_profile(spec)) {
    Profile1D p = catalog_profile(spec);
    const Interval d{std::max(p.domain().lo, domain.lo), std::min(p.domain().hi, domain.hi)};
    return p.with_domain(d);
  }
  return parse_profile(spec, varname, domain);
}

}  // namespace gqe
