#pragma once

// Brute-force curvature of an arbitrary metric from its components alone:
// Γ from central differences of g, Riemann from Γ and central differences
// of Γ, Ricci by contraction, S by the metric trace. Nothing here uses the
// closed forms of the geometry module.

#include <functional>
#include <span>
#include <vector>

#include "gqe/field.hpp"
#include "gqe/sym_tensor.hpp"

namespace gqe {

/// h₁ = first·(1+‖x‖) for ∂g, h₂ = second·(1+‖x‖) for ∂Γ. The defaults
/// keep truncation of the nested stencil near 1e-6 relative while halving
/// them still shows the second-order 4× decrease.
struct StepPolicy {
  double first = 3e-5;
  double second = 3e-4;

  double h1(std::span<const double> x) const { return first * (1.0 + norm2(x)); }
  double h2(std::span<const double> x) const { return second * (1.0 + norm2(x)); }
  StepPolicy scaled(double s) const { return {first * s, second * s}; }
};

class RawMetric {
 public:
  using Components = std::function<SymTensor(std::span<const double>)>;

  RawMetric(int n, Components g, StepPolicy steps = {});

  /// g = δ/φ² from values of φ only.
  static RawMetric conformal(const ScalarField& phi, StepPolicy steps = {});

  int dim() const noexcept { return n_; }
  const StepPolicy& steps() const noexcept { return steps_; }
  RawMetric with_steps(StepPolicy steps) const;

  /// g(x). Throws DomainError unless positive definite.
  SymTensor at(std::span<const double> x) const;

 private:
  int n_;
  Components g_;
  StepPolicy steps_;
};

struct FdCurvature {
  int n = 0;
  Christoffel gamma;
  /// Rᵖ_σμν stored at ((ρ·n + σ)·n + μ)·n + ν.
  std::vector<double> riemann_up;
  /// R_ρσμν = g_ρα Rᵅ_σμν, same layout.
  std::vector<double> riemann_low;
  /// Ric_σν = Rᵖ_σρν, symmetrized.
  SymTensor ricci;
  /// max |Ric_σν − Ric_νσ| before symmetrizing. The two stencil steps differ,
  /// so this is O(h₂²) rather than roundoff.
  double ricci_asymmetry = 0.0;
  double scalar = 0.0;

  double up(int r, int s, int m, int v) const { return riemann_up[idx(r, s, m, v)]; }
  double low(int r, int s, int m, int v) const { return riemann_low[idx(r, s, m, v)]; }
  std::size_t idx(int r, int s, int m, int v) const {
    return ((static_cast<std::size_t>(r) * n + s) * n + m) * n + v;
  }
};

/// Rᵖ_σμν = ∂_μΓᵖ_νσ − ∂_νΓᵖ_μσ + Γᵖ_μλΓᵏ_νσ − Γᵖ_νλΓᵏ_μσ (λ=κ summed).
/// Throws DomainError if g is not positive definite near x and
/// InvalidArgument if a step underflows against ‖x‖.
FdCurvature fd_curvature(const RawMetric& m, std::span<const double> x);

/// Γ at x only (first-derivative stencil).
Christoffel fd_christoffel(const RawMetric& m, std::span<const double> x);

/// max|a − ref| / max(1, max|ref|).
double relative_gap(const SymTensor& a, const SymTensor& ref);

}  // namespace gqe
