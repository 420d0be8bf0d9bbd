#pragma once

// Closed-form differential geometry of the conformally flat metric
//   g_ij = δ_ij / φ²
// on ℝⁿ, n ≥ 3. All tensors are stored with lower indices; raising an index
// multiplies by φ².

#include <functional>
#include <span>

#include "gqe/field.hpp"
#include "gqe/sym_tensor.hpp"

namespace gqe {

/// Smallest |φ| accepted at an evaluation point.
inline constexpr double kMinConformalFactor = 1e-300;

class ConformalPoint;

class ConformalMetric {
 public:
  explicit ConformalMetric(ScalarField phi);

  int dim() const noexcept { return phi_.dim(); }
  const ScalarField& factor() const noexcept { return phi_; }

  /// Freezes the metric at x. Throws ZeroConformalFactor if |φ(x)| ≤ 1e-300.
  ConformalPoint at(std::span<const double> x) const;

 private:
  ScalarField phi_;
};

/// The metric and its first two coordinate derivatives at one point. All
/// closed forms are evaluated from this jet.
class ConformalPoint {
 public:
  explicit ConformalPoint(FieldJet phi);

  int dim() const noexcept { return n_; }
  double phi() const noexcept { return jet_.value; }
  const Vector& dphi() const noexcept { return jet_.gradient; }
  const SymTensor& ddphi() const noexcept { return jet_.hessian; }

  SymTensor metric() const;
  SymTensor inverse_metric() const;

  /// Γᵏᵢⱼ = −(∂ᵢφ δⱼₖ + ∂ⱼφ δᵢₖ − ∂ₖφ δᵢⱼ)/φ.
  Christoffel christoffel() const;

  /// Ric_ij = (n−2) φ_ij/φ + Σₖ[φ_kk/φ − (n−1)(φ_k/φ)²] δ_ij.
  SymTensor ricci() const;

  /// S = (n−1)(2φΔ₀φ − n|∇₀φ|²).
  double scalar_curvature() const;

  /// ∇²f_ij = f_ij + (f_i φ_j + φ_i f_j)/φ − (Σₖ f_k φ_k/φ) δ_ij.
  SymTensor hessian(const FieldJet& f) const;
  /// (∇f)ⁱ = φ² ∂ᵢf.
  Vector gradient(const FieldJet& f) const;
  double laplacian(const FieldJet& f) const;

  Vector raise(std::span<const double> covector) const;
  double trace(const SymTensor& t) const;
  double inner(const SymTensor& a, const SymTensor& b) const;
  double inner_covectors(std::span<const double> a, std::span<const double> b) const;
  double norm_vector(std::span<const double> v) const;
  double norm_covector(std::span<const double> w) const;
  double norm(const SymTensor& t) const;
  SymTensor traceless(const SymTensor& t) const;

 private:
  int n_;
  FieldJet jet_;
};

using VectorField = std::function<Vector(std::span<const double>)>;
using TensorField = std::function<SymTensor(std::span<const double>)>;

/// Default finite-difference step for differentiating derived fields,
/// h = 1e-4·(1 + ‖x‖).
double derived_field_step(std::span<const double> x);

/// ∂ₖF(x) by the five-point central difference
///   (−F(x+2h) + 8F(x+h) − 8F(x−h) + F(x−2h)) / (12h).
/// T is double or SymTensor.
template <class T, class Fn>
T partial_derivative(const Fn& fn, std::span<const double> x, int k, double h) {
  Vector y(x.begin(), x.end());
  auto at = [&](double offset) {
    y[k] = x[k] + offset;
    T v = fn(std::span<const double>(y));
    y[k] = x[k];
    return v;
  };
  T acc = at(h) - at(-h);
  acc = 8.0 * acc;
  acc = acc - (at(2.0 * h) - at(-2.0 * h));
  return acc * (1.0 / (12.0 * h));
}

SymTensor metric_at(const ConformalMetric& m, std::span<const double> x);
Christoffel christoffel_at(const ConformalMetric& m, std::span<const double> x);
SymTensor ricci_at(const ConformalMetric& m, std::span<const double> x);
double scalar_curvature_at(const ConformalMetric& m, std::span<const double> x);
SymTensor hessian_g(const ConformalMetric& m, const ScalarField& f, std::span<const double> x);
Vector gradient_g(const ConformalMetric& m, const ScalarField& f, std::span<const double> x);
double laplacian_g(const ConformalMetric& m, const ScalarField& f, std::span<const double> x);
double norm_g(const ConformalMetric& m, const SymTensor& t, std::span<const double> x);
double norm_g_vector(const ConformalMetric& m, std::span<const double> v,
                     std::span<const double> x);
double norm_g_covector(const ConformalMetric& m, std::span<const double> w,
                       std::span<const double> x);

/// div X = ∂ᵢXⁱ + Γⁱᵢₖ Xᵏ for a contravariant field, ∂ᵢXⁱ by
/// partial_derivative (step `h`, default derived_field_step(x)).
double divergence_g(const ConformalMetric& m, const VectorField& field,
                    std::span<const double> x, double h = 0.0);

/// (div T)_j = g^{ik} ∇_k T_ij for a symmetric 2-tensor field; returns a
/// covector.
Vector divergence_g(const ConformalMetric& m, const TensorField& field,
                    std::span<const double> x, double h = 0.0);

/// T − (tr_g T / n) g for an arbitrary positive-definite g. Throws
/// DomainError if g is singular or indefinite.
SymTensor traceless(const SymTensor& t, const SymTensor& g);

/// ‖div_g Ric − ½ dS‖_g with ∂Ric and dS by partial_derivative.
double bianchi_gap(const ConformalMetric& m, std::span<const double> x, double h = 0.0);

}  // namespace gqe
