#include "gqe/verify.hpp"

#include <algorithm>
#include <cmath>

#include "gqe/error.hpp"
#include "gqe/rigidity.hpp"

namespace gqe {

VerificationReport evaluate_on_points(
    const std::vector<CheckSpec>& specs, std::size_t count,
    const std::function<std::vector<double>(std::size_t)>& eval,
    const std::function<bool(std::size_t)>& skip, unsigned threads) {
  const std::function<PointOutcome(std::size_t)> one = [&](std::size_t i) {
    PointOutcome out;
    try {
      if (skip && skip(i)) {
        out.skipped = true;
        return out;
      }
      out.gaps = eval(i);
      if (out.gaps.size() != specs.size()) out.error = "internal: gap count mismatch";
    } catch (const Error& e) {
      out.error = e.what();
    }
    return out;
  };
  const std::vector<PointOutcome> outcomes = parallel_map(count, one, threads);

  VerificationReport report;
  for (const auto& s : specs) report.add_check(s.name, s.tol, s.asserted);
  for (const auto& o : outcomes) {
    for (std::size_t k = 0; k < specs.size(); ++k) {
      CheckResult& c = report.check(specs[k].name);
      if (o.skipped) {
        c.skip();
      } else if (!o.error.empty()) {
        c.fail(o.error);
      } else {
        c.add(o.gaps[k]);
      }
    }
  }
  return report;
}

VerificationReport verify_structure(const GqeStructure& s, std::span<const GridPoint> points,
                                    const StructureTolerances& tol,
                                    const PhiTransform* transform, unsigned threads) {
  std::vector<CheckSpec> specs{
      {"residual", tol.residual},
      {"lambda_trace", tol.lambda_consistency},
      {"wedge", tol.wedge},
  };
  if (transform) {
    specs.push_back({"potential_consistency", tol.potential});
    specs.push_back({"transformed_residual", tol.transformed});
    specs.push_back({"traceless_gap", tol.transformed});
    specs.push_back({"divergence_general", tol.divergence});
  }

  // Small |φ| and stationary points of f (where ν is undefined) are skipped.
  auto skip = [&](std::size_t i) {
    if (!(std::abs(s.phi().value(points[i].x)) >= kSkipConformalFactor)) return true;
    try {
      s.nu.value(points[i].x);
    } catch (const DegenerateInput&) {
      return true;
    }
    return false;
  };
  auto eval = [&](std::size_t i) {
    const Vector& x = points[i].x;
    std::vector<double> gaps;
    gaps.push_back(residual_at(s, x).max_abs());
    const double lambda = s.lambda.value(x);
    const double fitted = fit_lambda_by_trace(s.metric, s.f, s.nu, x);
    gaps.push_back(std::abs(lambda - fitted) / std::max(1.0, std::abs(lambda)));
    gaps.push_back(wedge_invariant_at(s, x));
    if (transform) {
      gaps.push_back(potential_consistency_gap(s, *transform, x));
      gaps.push_back(transformed_residual_at(s, *transform, x).max_abs());
      gaps.push_back(traceless_identity_gap(s, *transform, x));
      gaps.push_back(divergence_identity_gap(s, *transform, x).general_gap);
    }
    return gaps;
  };
  return evaluate_on_points(specs, points.size(), eval, skip, threads);
}

GqeStructure with_lambda_offset(const GqeStructure& s, double offset) {
  const ScalarField base = s.lambda;
  ScalarField shifted =
      (base.is_radial() || base.is_translation())
          ? (base.is_radial()
                 ? ScalarField::radial(affine(base.profile(), 1.0, offset), base.dim())
                 : ScalarField::translation(affine(base.profile(), 1.0, offset),
                                            std::get<Translation>(base.kind()).alpha))
          : ScalarField::explicit_field(
                [base, offset](std::span<const double> x) { return base.value(x) + offset; },
                base.dim(), base.label() + " + offset");
  return GqeStructure{s.metric, s.f, s.nu, std::move(shifted), s.label};
}

}  // namespace gqe
