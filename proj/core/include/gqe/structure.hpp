#pragma once

// Generalized quasi-Einstein structures
//
//   Ric + ∇²f − ν df⊗df = λ g,     g = δ/φ²  on ℝⁿ,
//
// and the closed-form families in which φ and f depend on one variable:
// r = ‖x‖² (radial) or u = α·x (translation-invariant).

#include <functional>
#include <span>
#include <string>

#include "gqe/field.hpp"
#include "gqe/geometry.hpp"
#include "gqe/profile.hpp"

namespace gqe {

struct GqeStructure {
  ConformalMetric metric;
  ScalarField f;
  ScalarField nu;
  ScalarField lambda;
  std::string label;

  int dim() const { return metric.dim(); }
  const ScalarField& phi() const { return metric.factor(); }
};

/// Validates that all four fields live on the same ℝⁿ with n ≥ 3.
GqeStructure make_structure(ScalarField phi, ScalarField f, ScalarField nu, ScalarField lambda,
                            std::string label = {});

/// Ric + ∇²f − ν df⊗df − λ g at x (lower indices). Zero iff the defining
/// equation holds at x.
SymTensor residual_at(const GqeStructure& s, std::span<const double> x);

/// ν, λ and S of a one-variable family as profiles in the symmetry variable.
/// Values are exact closed forms; their d1/d2 are central differences.
struct ClosureProfiles {
  Profile1D nu;
  Profile1D lambda;
  Profile1D scalar_curvature;
};

/// Radial family in r = ‖x‖²:
///   ν = [(n−2)φ″/φ + f″ + 2f′φ′/φ] / (f′)²
///   λ = 4[(n−1)φ′(φ − rφ′) + rφ(φ″ − f′φ′)] + 2f′φ²
///   S = 4(n−1)[2rφφ″ − nr(φ′)² + nφφ′]
/// Evaluating where f′ = 0 throws DegenerateInput; where φ = 0,
/// ZeroConformalFactor.
ClosureProfiles radial_closure(const Profile1D& phi, const Profile1D& f, int n);

/// Translation family in u = α·x, a = Σαₖ²:
///   ν as in the radial case,
///   λ = a[φφ″ − f′φφ′ − (n−1)(φ′)²]
///   S = a(n−1)[2φφ″ − n(φ′)²]
ClosureProfiles translation_closure(const Profile1D& phi, const Profile1D& f,
                                    const Vector& alpha, int n);

GqeStructure radial_structure(const Profile1D& phi, const Profile1D& f, int n,
                              std::string label = {});
GqeStructure translation_structure(const Profile1D& phi, const Profile1D& f,
                                   const Vector& alpha, std::string label = {});

/// Largest |3×3 minor| of the matrix with rows d‖∇f‖²_g, dν, df at x. Zero
/// certifies d‖∇f‖² ∧ dν ∧ df = 0 there.
double wedge_invariant_at(const GqeStructure& s, std::span<const double> x);

/// λ = (S + Δ_g f − ν‖∇f‖²_g)/n, the unique λ making the g-trace of the
/// residual vanish.
double fit_lambda_by_trace(const ConformalMetric& metric, const ScalarField& f,
                           const ScalarField& nu, std::span<const double> x);

/// Solves fn(t) = target for monotone fn by bisection on [lo, hi]; stops
/// when the bracket is narrower than `tol`. Throws InvalidArgument if the
/// bracket does not straddle the target.
double invert_monotone(const std::function<double(double)>& fn, double target, double lo,
                       double hi, double tol = 1e-12);

/// Samples p′ at `samples` points of [lo, hi]; throws DegenerateInput if p′
/// vanishes or changes sign.
void require_strictly_monotone(const Profile1D& p, double lo, double hi, int samples = 256);

}  // namespace gqe
