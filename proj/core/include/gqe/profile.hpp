#pragma once

#include <functional>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "gqe/expression.hpp"
#include "gqe/jet.hpp"

namespace gqe {

/// Open interval (lo, hi); either end may be infinite.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  static Interval real_line() { return {}; }
  bool contains(double t) const { return t > lo && t < hi; }
  bool bounded() const { return std::isfinite(lo) && std::isfinite(hi); }
};

/// A twice-differentiable function of one real variable together with its
/// declared domain. Immutable; copies share the underlying callable.
class Profile1D {
 public:
  using JetFn = std::function<Jet(double)>;

  Profile1D(JetFn fn, Interval domain, std::string label);

  static Profile1D constant(double c);
  static Profile1D identity();

  /// Wraps a value-only function; d1 and d2 come from central differences
  /// with step `rel_step * (1 + |t|)`.
  static Profile1D from_values(std::function<double(double)> value, Interval domain,
                               std::string label, double rel_step = 1e-4);

  /// Throws DomainError if t is outside the declared domain.
  Jet jet(double t) const;
  double value(double t) const { return jet(t).value; }
  double d1(double t) const { return jet(t).d1; }
  double d2(double t) const { return jet(t).d2; }

  const Interval& domain() const noexcept { return domain_; }
  const std::string& label() const noexcept { return label_; }

  Profile1D with_domain(Interval domain) const;

 private:
  JetFn fn_;
  Interval domain_;
  std::string label_;
};

/// outer(inner(t)); the inner value must land in outer's domain.
Profile1D compose(const Profile1D& outer, const Profile1D& inner);

/// Sum, scalar affine map and product of profiles (domain = intersection).
Profile1D affine(const Profile1D& p, double scale, double shift);
Profile1D multiply(const Profile1D& a, const Profile1D& b);

/// Parses `text` over the single variable `varname` and differentiates the
/// tree with second-order jets. Domain defaults to the real line.
Profile1D parse_profile(std::string_view text, std::string_view varname,
                        Interval domain = Interval::real_line());

/// (value, d1, d2) at t. Same as p.jet(t); kept as the named operation.
Jet profile_derivatives(const Profile1D& p, double t);

/// Built-in closed-form profiles with hand-written derivatives. Names:
///   zero, one, identity, square, gaussian (exp(-t^2/2)),
///   inverse_linear (1/(1+t)), one_plus_tanh (1+tanh t),
///   sphere_chart ((1+t)/2), ball_chart ((1-t)/2), height ((t-1)/(t+1)).
Profile1D catalog_profile(std::string_view name);
std::vector<std::string> catalog_profile_names();
bool is_catalog_profile(std::string_view name);

/// Catalog name if it is one, otherwise an inline expression in `varname`.
Profile1D resolve_profile(std::string_view spec, std::string_view varname,
                          Interval domain = Interval::real_line());

}  // namespace gqe
