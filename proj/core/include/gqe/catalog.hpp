#pragma once

// Named structures and metrics used by the CLI, tests and benchmarks.

#include <string>
#include <vector>

#include "gqe/geometry.hpp"
#include "gqe/grid.hpp"
#include "gqe/phi_transform.hpp"
#include "gqe/structure.hpp"

namespace gqe {

/// φ = e^{−r²/2}, f = c·r (radial).
GqeStructure example1(int n, double c = 1.0);
/// φ = 1/(1+r), f = c·r (radial).
GqeStructure example2(int n, double c = 1.0);
/// φ = 1 + tanh u, f = u, u = α·x.
GqeStructure example3(const Vector& alpha);
/// example3 with α = e₁.
GqeStructure example3(int n);
/// φ ≡ 1, f = c·r, ν ≡ 0, λ ≡ 2c.
GqeStructure flat_gaussian(int n, double c = 1.0);
/// φ = u = x_n on the upper half-space, f = u; ν = 2/u, S = −n(n−1).
GqeStructure hyperbolic_witness(int n);

/// Explicit fields φ ≡ 1, f = x₁ + x₂², ν = x₃, λ ≡ 0 on ℝ³. Not a GQE
/// structure; its wedge invariant is 8x₂.
GqeStructure wedge_counterexample();

/// Structures checked by the grid-wide identities. Dimension n.
std::vector<GqeStructure> catalog_structures(int n);

/// Radial structures get radial_grid; translation structures get
/// translation_grid along their α, with u_min raised to stay 0.5 inside the
/// domain of φ.
std::vector<GridPoint> default_grid(const GqeStructure& s, std::uint64_t seed = kDefaultSeed);

/// The transform with v = ν∘f⁻¹ for a structure whose ν and f are profiles
/// of the same symmetry variable, covering that variable on [lo, hi] plus a
/// 5% margin on each side (room for finite-difference stencils). t0 is the
/// smaller of f(lo), f(hi).
PhiTransform potential_transform(const GqeStructure& s, double lo, double hi, double c1 = 1.0,
                                 double c2 = 0.0);

/// [lo, hi] of the symmetry variable covered by default_grid.
std::pair<double, double> default_grid_range(const GqeStructure& s);

ConformalMetric euclidean_metric(int n);
/// φ = (1+r)/2: the unit round sphere minus a pole, S = n(n−1).
ConformalMetric sphere_chart_metric(int n);
/// φ = (1−r)/2 on r < 1: the Poincaré ball, S = −n(n−1).
ConformalMetric ball_chart_metric(int n);
/// φ = x_n/ρ on x_n > 0, S = −n(n−1)/ρ².
ConformalMetric half_space_metric(int n, double rho = 1.0);
ConformalMetric example1_metric(int n);

/// The closed forms printed for the three examples, evaluated directly.
struct ClosedForm {
  double nu;
  double lambda;
  double scalar;
};

ClosedForm example1_closed_form(int n, double c, double r);
ClosedForm example2_closed_form(int n, double c, double r);
/// a = Σαₖ².
ClosedForm example3_closed_form(int n, double a, double u);

}  // namespace gqe
