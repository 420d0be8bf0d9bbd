#pragma once

// Scalar fields on ℝⁿ built from one-dimensional profiles.
//
// NOTE: radial fields are functions of the SQUARED norm r = ‖x‖², not of
// ‖x‖. A radial profile F gives the field x ↦ F(‖x‖²), with
//   ∂ᵢF   = 2 xᵢ F′(r)
//   ∂ᵢ∂ⱼF = 2 δᵢⱼ F′(r) + 4 xᵢ xⱼ F″(r).
// Translation-invariant fields are functions of u = α·x, with
//   ∂ᵢF = αᵢ F′(u),   ∂ᵢ∂ⱼF = αᵢ αⱼ F″(u).

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>

#include "gqe/jet.hpp"
#include "gqe/profile.hpp"
#include "gqe/sym_tensor.hpp"

namespace gqe {

struct Radial {};

struct Translation {
  Vector alpha;
  /// a = Σ αₖ².
  double a() const { return dot(alpha, alpha); }
};

struct FieldJet;

/// Arbitrary function of x. Derivatives come from `jet` when supplied,
/// otherwise from central differences with step h = 1e-5·(1 + ‖x‖).
struct Explicit {
  std::function<double(std::span<const double>)> value;
  std::function<FieldJet(std::span<const double>)> jet;
};

using SymmetryKind = std::variant<Radial, Translation, Explicit>;

/// Coordinate (flat-metric) value, gradient and Hessian at a point.
struct FieldJet {
  double value = 0.0;
  Vector gradient;
  SymTensor hessian;
};

/// Jet of outer∘F given outer's jet at F(x) and F's field jet.
FieldJet compose(const Jet& outer_at_value, const FieldJet& inner);

class ScalarField {
 public:
  static ScalarField radial(Profile1D profile, int n);
  /// Throws DegenerateInput unless a = Σαₖ² > 0.
  static ScalarField translation(Profile1D profile, Vector alpha);
  static ScalarField explicit_field(std::function<double(std::span<const double>)> fn, int n,
                                    std::string label);
  /// Explicit field with exact value, gradient and Hessian.
  static ScalarField explicit_jet_field(std::function<FieldJet(std::span<const double>)> jet,
                                        int n, std::string label);
  static ScalarField constant(double c, int n);

  int dim() const noexcept { return n_; }
  const SymmetryKind& kind() const noexcept { return kind_; }
  bool is_radial() const { return std::holds_alternative<Radial>(kind_); }
  bool is_translation() const { return std::holds_alternative<Translation>(kind_); }
  bool is_explicit() const { return std::holds_alternative<Explicit>(kind_); }

  /// The profile of a Radial/Translation field. Throws for Explicit.
  const Profile1D& profile() const;

  /// r = ‖x‖² (Radial) or u = α·x (Translation). Throws for Explicit.
  double argument(std::span<const double> x) const;

  FieldJet jet(std::span<const double> x) const;
  double value(std::span<const double> x) const;

  const std::string& label() const noexcept { return label_; }

 private:
  ScalarField(int n, SymmetryKind kind, std::optional<Profile1D> profile, std::string label);

  int n_;
  SymmetryKind kind_;
  std::optional<Profile1D> profile_;
  std::string label_;
};

/// Named operation: coordinate jet of F at x. Equivalent to F.jet(x).
FieldJet field_jet(const ScalarField& field, std::span<const double> x);

}  // namespace gqe
