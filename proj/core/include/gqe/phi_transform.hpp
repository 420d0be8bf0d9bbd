#pragma once

// Change of potential for structures with ν = v∘f:
//
//   φ′(t) = c₁ exp(−∫_{t₀}^t v),    φ(t) = c₂ + ∫_{t₀}^t φ′,
//
// so φ″ + vφ′ = 0, and u = φ∘f turns the defining equation into
//   Ric + (1/φ′(f)) ∇²u = λ g.

#include <memory>
#include <span>

#include "gqe/profile.hpp"
#include "gqe/quadrature.hpp"
#include "gqe/structure.hpp"

namespace gqe {

class PhiTransform {
 public:
  /// `lo`/`hi` bound the working interval (closed, must contain t0); v must
  /// be evaluable on it. Throws DegenerateInput if c1 = 0.
  PhiTransform(Profile1D v, double c1, double c2, double t0, double lo, double hi,
               QuadratureOptions options = {}, int panels = 64);

  double c1() const noexcept;
  double c2() const noexcept;
  double t0() const noexcept;
  double lo() const noexcept;
  double hi() const noexcept;
  const Profile1D& v() const noexcept;

  /// ∫_{t0}^t v.
  double v_integral(double t) const;
  double phi(double t) const;
  double phi_prime(double t) const;
  /// −v(t) φ′(t).
  double phi_second(double t) const;

  /// (φ, φ′, φ″) at t.
  Jet jet(double t) const;
  /// (NaN, φ′, φ″): skips the outer quadrature when only slopes are needed.
  Jet slope_jet(double t) const;

  Profile1D phi_profile() const;
  Profile1D phi_prime_profile() const;

  /// φ⁻¹(y): node-table lookup, then safeguarded Newton inside one panel.
  double inverse(double y) const;
  /// φ(lo) and φ(hi), ordered.
  std::pair<double, double> range() const;

  /// D_h φ′(t) + v(t) φ′(t) with D_h the five-point central difference,
  /// h = 1e-3·(1 + |t|) by default: a check of the ODE that does not reuse
  /// φ″ = −vφ′. t ± 2h must stay in the working interval.
  double ode_residual(double t, double h = 0.0) const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

/// Named constructor mirroring the formula's constants.
PhiTransform phi_from_v(const Profile1D& v, double c1, double c2, double t0, double lo,
                        double hi);

/// v = ν∘f⁻¹, so that ν = v∘f. `lo`/`hi` bracket the symmetry variable
/// where f is inverted (bisection to machine precision); the result's domain is
/// f([lo, hi]).
Profile1D reparametrize_by_potential(const Profile1D& nu, const Profile1D& f, double lo,
                                     double hi);

/// Coordinate jet of u = φ∘f at x. With `with_value = false` the value is
/// NaN and only the slopes are computed.
FieldJet transformed_potential_jet(const GqeStructure& s, const PhiTransform& pt,
                                   std::span<const double> x, bool with_value = true);

/// Ric + (1/φ′(f)) ∇²_g(φ∘f) − λ g at x.
SymTensor transformed_residual_at(const GqeStructure& s, const PhiTransform& pt,
                                  std::span<const double> x);

/// ‖R̊ic + (1/φ′(f)) (∇²_g(φ∘f))°‖_g at x; independent of λ.
double traceless_identity_gap(const GqeStructure& s, const PhiTransform& pt,
                              std::span<const double> x);

/// |ν(x) − v(f(x))|, the precondition of the two checks above.
double potential_consistency_gap(const GqeStructure& s, const PhiTransform& pt,
                                 std::span<const double> x);

}  // namespace gqe
