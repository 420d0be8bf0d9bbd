#pragma once

// Grid-wide verification of structures, with per-point skipping and an
// order-stable reduction.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gqe/grid.hpp"
#include "gqe/phi_transform.hpp"
#include "gqe/report.hpp"
#include "gqe/structure.hpp"

namespace gqe {

/// Points with |φ(x)| below this are skipped and counted.
inline constexpr double kSkipConformalFactor = 1e-6;

struct CheckSpec {
  std::string name;
  double tol;
  bool asserted = true;
};

struct PointOutcome {
  bool skipped = false;
  std::vector<double> gaps;
  std::string error;
};

/// Runs `eval` at every point (possibly on several threads) and folds the
/// outcomes into one CheckResult per spec, in point order. `eval` returns
/// one gap per check; a thrown gqe::Error fails every check with its
/// message. Points where `skip` returns true are counted as skipped.
VerificationReport evaluate_on_points(
    const std::vector<CheckSpec>& specs, std::size_t count,
    const std::function<std::vector<double>(std::size_t)>& eval,
    const std::function<bool(std::size_t)>& skip = {}, unsigned threads = 1);

struct StructureTolerances {
  double residual = 1e-8;
  double lambda_consistency = 1e-9;
  double wedge = 1e-12;
  double transformed = 1e-7;
  double potential = 1e-8;
  double divergence = 5e-5;
};

/// Checks on a structure over grid points:
///   residual                max |Ric + ∇²f − ν df⊗df − λg|
///   lambda_trace            |λ − fit_lambda_by_trace| / max(1, |λ|)
///   wedge                   wedge_invariant_at
/// and, when a transform is supplied (ν = v∘f):
///   potential_consistency   |ν − v(f)|
///   transformed_residual    max |Ric + (1/φ′(f))∇²u − λg|
///   traceless_gap           ‖R̊ic + (1/φ′(f))∇̊²u‖_g
///   divergence_general      general form of the divergence identity
VerificationReport verify_structure(const GqeStructure& s, std::span<const GridPoint> points,
                                    const StructureTolerances& tol = {},
                                    const PhiTransform* transform = nullptr,
                                    unsigned threads = 1);

/// A copy of `s` with λ replaced by λ + offset.
GqeStructure with_lambda_offset(const GqeStructure& s, double offset);

}  // namespace gqe
