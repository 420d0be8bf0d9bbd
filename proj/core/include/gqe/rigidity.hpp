#pragma once

// Numerical witnesses of the rigidity statements: the divergence identity
// behind the integral argument, the sphere potential in a stereographic
// chart, the model-space charts, the Karp annulus quantity and ray lengths.

#include <span>
#include <string>
#include <vector>

#include "gqe/phi_transform.hpp"
#include "gqe/report.hpp"
#include "gqe/structure.hpp"

namespace gqe {

struct DivergenceGaps {
  /// |div(R̊ic(∇u)) − (n−2)/(2n)⟨∇S,∇u⟩ − ⟨Ric, ∇̊²u⟩|; holds for any metric and u.
  double general_gap = 0.0;
  /// |div(R̊ic(∇u)) + (1/φ′(f))‖∇̊²u‖²|; holds when S is constant.
  double constant_s_gap = 0.0;
  /// The individual terms, for reporting.
  double divergence = 0.0;
  double scalar_term = 0.0;
  double ricci_term = 0.0;
  double hessian_term = 0.0;
};

/// u = φ∘f with φ from `pt`. div is taken by five-point central differences
/// of the vector field R̊ic(∇u) with step h (default 1e-4·(1+‖x‖)), and ∇S
/// likewise from the closed-form S.
DivergenceGaps divergence_identity_gap(const GqeStructure& s, const PhiTransform& pt,
                                       std::span<const double> x, double h = 0.0);

/// Stereographic chart of the unit sphere, φ = (1+r)/2, the height
/// h = (r−1)/(r+1) of the pole direction (h → 1 at the pole, which sits at
/// chart infinity), and the potential f = φ_T⁻¹(c − h/n) built from a
/// transform φ_T. ν = v∘f and λ is trace-fitted.
struct SphereWitness {
  int n;
  double c;
  PhiTransform transform;
  ScalarField height;
  GqeStructure structure;
};

/// Throws DomainError if c − h/n leaves the range of the transform for
/// r ∈ [0, r_max].
SphereWitness make_sphere_witness(int n, const PhiTransform& pt, double c, double r_max = 9.0);

struct SphereWitnessOptions {
  double c1 = 1.0;
  double c2 = 0.0;
  double t0 = 0.0;
  double lo = -4.0;
  double hi = 4.0;
  double residual_tol = 1e-7;
  double height_tol = 1e-7;
  double hessian_tol = 1e-6;
  double transformed_tol = 1e-7;
  double lambda_tol = 1e-6;
  double curvature_tol = 1e-6;
  double einstein_tol = 1e-8;
  double divergence_tol = 5e-5;
};

/// Checks, over `points` (each with ‖x‖² ≤ 9):
///   residual            max |Ric + ∇²f − ν df⊗df − λg|
///   height_identity     ‖∇²h + h g‖_g
///   hessian_constant      |c̃ − c|, c̃ least-squares fitted from the diagonal of
///                       ∇²u + (Su/(n(n−1))) g = c̃ g, u = φ_T∘f
///   hessian_deviation     ‖∇²u − (−Su/(n(n−1)) + c̃) g‖_g
///   lambda_closed_form  |λ − (n−1) − h/(n φ_T′(f))|
///   scalar_curvature    |S − n(n−1)|
///   einstein            ‖R̊ic‖_g
///   transformed_residual, traceless_gap, divergence_general,
///   divergence_constant_s
/// and records c_tilde.
VerificationReport sphere_witness_verify(int n, const Profile1D& v, double c,
                                         std::span<const Vector> points,
                                         const SphereWitnessOptions& options = {});

enum class ModelKind { Euclidean, HyperbolicHalfSpace, WarpedFlatFiber };

struct ModelSpace {
  ModelKind kind;
  /// ρ for the half-space, k for the warped product, unused for Euclidean.
  double param;
  int n;
  ConformalMetric chart;
  double expected_scalar_curvature;
  std::string name;
};

/// Euclidean: φ ≡ 1, S = 0.
/// HyperbolicHalfSpace(ρ): φ = x_n/ρ on x_n > 0, S = −n(n−1)/ρ².
/// WarpedFlatFiber(k): dt² + e^{2kt}δ, charted by x_n = e^{−kt}/|k| as
/// φ = |k|x_n, S = −n(n−1)k²; k = 0 is the flat product, i.e. Euclidean.
/// The chart's S is checked at a few points before returning.
ModelSpace model_space(ModelKind kind, double param, int n);
ModelKind parse_model_kind(const std::string& name);
std::string model_kind_name(ModelKind kind);

/// Random points inside the chart: the box [−1,1]^n, shifted to
/// x_n ∈ [0.5, 2.5] for half-space charts.
std::vector<Vector> model_sample_points(const ModelSpace& m, int count, std::uint64_t seed);

/// s(ρ) = ∫₀^ρ dt/|φ(t²)| for a radial chart.
double geodesic_radius(const ConformalMetric& m, double rho);

struct KarpOptions {
  double quad_abs_tol = 1e-12;
  double quad_rel_tol = 1e-9;
};

/// (1/r_g) ω_{n−1} ∫_{ρ(r_g)}^{ρ(2r_g)} ‖R̊ic(∇u)‖_g φ(t²)^{−n} t^{n−1} dt,
/// ω_{n−1} = 2π^{n/2}/Γ(n/2), u = φ_T∘f. Requires a radial structure.
/// Throws DomainError if the chart ends before geodesic radius 2r_g.
double karp_annulus(const GqeStructure& s, const PhiTransform& pt, double r_g,
                    const KarpOptions& options = {});

/// ∫₀^T dt/|φ(x₀ + t·dir)| with dir normalized. Returns +inf when φ decays
/// to zero without changing sign (1/|φ| overflows); throws
/// ZeroConformalFactor on a sign change along the segment.
double ray_length(const ConformalMetric& m, std::span<const double> origin,
                  std::span<const double> direction, double T);
double ray_length(const GqeStructure& s, std::span<const double> direction, double T);

}  // namespace gqe
