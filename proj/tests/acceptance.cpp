// Acceptance suite: one PASS/FAIL line per criterion. Tolerances are fixed
// here. Usage: acceptance <path-to-gqe> <scratch-dir>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "gqe/catalog.hpp"
#include "gqe/error.hpp"
#include "gqe/oracle.hpp"
#include "gqe/rigidity.hpp"
#include "gqe/verify.hpp"
#include "oracles.hpp"

using gqe::GqeStructure;
using gqe::Vector;

namespace {

constexpr double kClosedFormTol = 1e-10;
constexpr double kResidualTol = 1e-8;
constexpr double kOracleTol = 5e-6;
constexpr double kHalvingLo = 3.5;
constexpr double kHalvingHi = 4.5;
constexpr double kModelTol = 1e-6;
constexpr double kWedgeTol = 1e-12;
constexpr double kTransformedTol = 1e-7;
constexpr double kDivergenceTol = 5e-5;
constexpr double kWitnessResidualTol = 1e-7;
constexpr double kWitnessConstantTol = 1e-6;
constexpr double kWitnessUnitVTol = 1e-6;
constexpr double kRayTol = 1e-10;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

bool skipped(const GqeStructure& s, const Vector& x) {
  return std::abs(s.phi().value(x)) < gqe::kSkipConformalFactor;
}

Outcome examples_match_closed_forms() {
  double worst = 0;
  for (int n : {3, 4, 5}) {
    for (double c : {1.0, 2.0}) {
      const auto f = gqe::affine(gqe::Profile1D::identity(), c, 0.0);
      const auto g = gqe::radial_closure(gqe::catalog_profile("gaussian"), f, n);
      const auto h = gqe::radial_closure(gqe::catalog_profile("inverse_linear"), f, n);
      for (int k = 0; k < 50; ++k) {
        const double r = 0.01 + 9.0 * k / 49;
        const auto e1 = oracle::gaussian_example(n, c, r);
        const auto e2 = oracle::inverse_linear_example(n, c, r);
        worst = std::max({worst, oracle::rel(g.nu.value(r), e1.nu),
                          oracle::rel(g.lambda.value(r), e1.lambda),
                          oracle::rel(g.scalar_curvature.value(r), e1.scalar),
                          oracle::rel(h.nu.value(r), e2.nu),
                          oracle::rel(h.lambda.value(r), e2.lambda),
                          oracle::rel(h.scalar_curvature.value(r), e2.scalar)});
      }
    }
    Vector alpha(n, 0.0);
    alpha[0] = 1.0;
    alpha[n - 1] = -0.5;
    const double a = gqe::dot(alpha, alpha);
    const auto t = gqe::translation_closure(gqe::catalog_profile("one_plus_tanh"),
                                            gqe::Profile1D::identity(), alpha, n);
    for (int k = 0; k < 50; ++k) {
      const double u = -3.0 + 6.0 * k / 49;
      const auto e = oracle::tanh_example(n, a, u);
      worst = std::max({worst, oracle::rel(t.nu.value(u), e.nu),
                        oracle::rel(t.lambda.value(u), e.lambda),
                        oracle::rel(t.scalar_curvature.value(u), e.scalar)});
    }
  }
  return {worst <= kClosedFormTol, fmt("worst relative error %.3g (tol %.0e)", worst,
                                       kClosedFormTol)};
}

Outcome defining_equation_residual() {
  double worst = 0;
  long evaluated = 0;
  for (int n : {3, 4, 5}) {
    for (const GqeStructure& s :
         {gqe::example1(n), gqe::example2(n), gqe::example3(n), gqe::flat_gaussian(n)}) {
      for (const auto& p : gqe::default_grid(s)) {
        if (skipped(s, p.x)) continue;
        worst = std::max(worst, gqe::residual_at(s, p.x).max_abs());
        ++evaluated;
      }
    }
  }
  return {worst <= kResidualTol && evaluated > 0,
          fmt("max residual %.3g over %.0f points (tol %.0e)", worst, double(evaluated),
              kResidualTol)};
}

Outcome oracle_agreement() {
  const int n = 3;
  Vector lo(n, -1.0), hi(n, 1.0);
  lo[n - 1] = 0.5;
  hi[n - 1] = 2.5;
  const std::pair<gqe::ConformalMetric, std::vector<Vector>> cases[] = {
      {gqe::euclidean_metric(n), gqe::box_points(n, 20, -1, 1, 1)},
      {gqe::sphere_chart_metric(n), gqe::box_points(n, 20, -1, 1, 2)},
      {gqe::half_space_metric(n), gqe::box_points(lo, hi, 20, 3)},
      {gqe::example1_metric(n), gqe::box_points(n, 20, -1, 1, 4)}};
  double worst = 0, ratio_lo = 1e300, ratio_hi = 0;
  bool first = true;
  for (const auto& [metric, points] : cases) {
    const gqe::RawMetric raw = gqe::RawMetric::conformal(metric.factor());
    const gqe::RawMetric half = raw.with_steps(raw.steps().scaled(0.5));
    std::vector<double> ratios;
    for (const auto& x : points) {
      const gqe::SymTensor ric = gqe::ricci_at(metric, x);
      const double g1 = gqe::relative_gap(gqe::fd_curvature(raw, x).ricci, ric);
      const double g2 = gqe::relative_gap(gqe::fd_curvature(half, x).ricci, ric);
      worst = std::max(worst, g1);
      if (g2 > 0) ratios.push_back(g1 / g2);
    }
    if (first) {  // flat: both gaps are roundoff, no truncation to halve
      first = false;
      continue;
    }
    std::sort(ratios.begin(), ratios.end());
    const double median = ratios[ratios.size() / 2];
    ratio_lo = std::min(ratio_lo, median);
    ratio_hi = std::max(ratio_hi, median);
  }
  const bool pass = worst <= kOracleTol && ratio_lo >= kHalvingLo && ratio_hi <= kHalvingHi;
  return {pass, fmt("worst relative gap %.3g (tol %.0e); halving ratio medians in [%.2f, ", worst,
                    kOracleTol, ratio_lo) +
                    fmt("%.2f]", ratio_hi)};
}

Outcome model_curvatures() {
  double worst = 0;
  for (int n : {3, 4, 5}) {
    const auto hyp = gqe::model_space(gqe::ModelKind::HyperbolicHalfSpace, 1.0, n);
    const auto euc = gqe::model_space(gqe::ModelKind::Euclidean, 0.0, n);
    const auto sphere = gqe::sphere_chart_metric(n);
    for (const auto& x : gqe::box_points(n, 50, -1, 1, 7)) {
      worst = std::max(worst, std::abs(gqe::scalar_curvature_at(sphere, x) - n * (n - 1.0)));
    }
    for (const auto& x : gqe::model_sample_points(hyp, 50, 8)) {
      worst = std::max(worst, std::abs(gqe::scalar_curvature_at(hyp.chart, x) + n * (n - 1.0)));
    }
    for (const auto& x : gqe::model_sample_points(euc, 50, 9)) {
      worst = std::max(worst, std::abs(gqe::scalar_curvature_at(euc.chart, x)));
    }
  }
  return {worst <= kModelTol, fmt("worst |S - expected| %.3g (tol %.0e)", worst, kModelTol)};
}

Outcome wedge_condition() {
  double worst = 0;
  for (int n : {3, 4, 5}) {
    for (const auto& s : gqe::catalog_structures(n)) {
      for (const auto& p : gqe::default_grid(s)) {
        if (!skipped(s, p.x)) worst = std::max(worst, gqe::wedge_invariant_at(s, p.x));
      }
    }
  }
  const Vector x = {0.4, 1.0, -0.3};
  const double counter = gqe::wedge_invariant_at(gqe::wedge_counterexample(), x);
  const bool pass = worst <= kWedgeTol && std::abs(counter - 8.0) <= kWedgeTol;
  return {pass, fmt("families %.3g (tol %.0e); counterexample at x2=1: %.15g", worst, kWedgeTol,
                    counter)};
}

Outcome transformed_equivalence() {
  const GqeStructure s = gqe::example1(3, 1.0);
  const GqeStructure broken = gqe::with_lambda_offset(s, 1.0);
  const gqe::PhiTransform pt = gqe::potential_transform(s, 0.0, 9.0);
  double residual = 0, traceless = 0, traceless_shift = 0, broken_residual = 1e300;
  int used = 0;
  for (const auto& p : gqe::radial_grid(3, {80, 1, 0.01, 9.0}, 5)) {
    if (skipped(s, p.x) || used == 50) continue;
    ++used;
    const double a = gqe::traceless_identity_gap(s, pt, p.x);
    residual = std::max(residual, gqe::transformed_residual_at(s, pt, p.x).max_abs());
    traceless = std::max(traceless, a);
    traceless_shift =
        std::max(traceless_shift, std::abs(gqe::traceless_identity_gap(broken, pt, p.x) - a));
    broken_residual =
        std::min(broken_residual, gqe::transformed_residual_at(broken, pt, p.x).max_abs());
  }
  const bool pass = used == 50 && residual <= kTransformedTol && traceless <= kTransformedTol &&
                    traceless_shift <= kTransformedTol && broken_residual > 0.5;
  return {pass, fmt("transformed %.3g, traceless %.3g (tol %.0e); ", residual, traceless,
                    kTransformedTol) +
                    fmt("broken lambda: traceless shift %.3g, smallest transformed residual %.3g",
                        traceless_shift, broken_residual)};
}

Outcome divergence_identity() {
  double general = 0;
  for (const auto& s : gqe::catalog_structures(3)) {
    const auto [lo, hi] = gqe::default_grid_range(s);
    const gqe::PhiTransform pt = gqe::potential_transform(s, lo, hi);
    for (const auto& p : gqe::default_grid(s)) {
      if (!skipped(s, p.x)) {
        general = std::max(general, gqe::divergence_identity_gap(s, pt, p.x).general_gap);
      }
    }
  }
  std::vector<Vector> points;
  for (const auto& p : gqe::radial_grid(3)) points.push_back(p.x);
  const auto w = gqe::sphere_witness_verify(3, gqe::Profile1D::constant(0.0), 0.0, points);
  const double constant_s = w.find("divergence_constant_s")->max_gap();
  return {general <= kDivergenceTol && constant_s <= kDivergenceTol,
          fmt("general %.3g on catalog, constant-S %.3g on sphere witness (tol %.0e)", general,
              constant_s, kDivergenceTol)};
}

Outcome sphere_witness() {
  std::vector<Vector> points;
  for (const auto& p : gqe::radial_grid(3)) points.push_back(p.x);
  gqe::SphereWitnessOptions zero;
  zero.residual_tol = kWitnessResidualTol;
  zero.hessian_tol = kWitnessConstantTol;
  const auto a = gqe::sphere_witness_verify(3, gqe::Profile1D::constant(0.0), 0.0, points, zero);
  gqe::SphereWitnessOptions unit;
  unit.residual_tol = kWitnessUnitVTol;
  const auto b = gqe::sphere_witness_verify(3, gqe::Profile1D::constant(1.0), 0.0, points, unit);
  const double c_tilde = a.value("c_tilde");
  const bool pass = a.overall_pass() && std::abs(c_tilde) <= kWitnessConstantTol &&
                    b.overall_pass() && b.find("residual")->max_gap() <= kWitnessUnitVTol;
  return {pass, fmt("v=0: residual %.3g, c~ = %.3g; ", a.find("residual")->max_gap(), c_tilde) +
                    fmt("v=1: residual %.3g", b.find("residual")->max_gap())};
}

Outcome completeness() {
  const std::pair<GqeStructure, double> cases[] = {
      {gqe::example1(3), 1.0}, {gqe::example2(3), 1.0}, {gqe::example3(3), 2.0}};
  const Vector dirs[] = {{1.0, 0.0, 0.0}, {-1.0, 0.0, 0.0}, {0.0, 0.6, -0.8}};
  double slack = 1e300;
  for (const auto& [s, sup] : cases) {
    for (const auto& d : dirs) {
      for (double T : {1.0, 10.0, 100.0}) {
        slack = std::min(slack, gqe::ray_length(s, d, T) / (T / sup) - 1.0);
      }
    }
  }
  const double two = gqe::ray_length(gqe::example2(3), dirs[0], 2.0);
  const bool pass = slack >= 0.0 && std::abs(two - 14.0 / 3.0) <= kRayTol;
  return {pass, fmt("min length/(T/sup|phi|) - 1 = %.3g; inverse-linear T=2: %.15g", slack, two)};
}

Outcome determinism(const std::string& gqe, const std::string& dir) {
  auto strip = [](const std::string& path) {
    std::ifstream in(path);
    std::string line, out;
    while (std::getline(in, line)) {
      if (line.find("\"timestamp\"") == std::string::npos) out += line + "\n";
    }
    return out;
  };
  std::string reports[2];
  for (int k = 0; k < 2; ++k) {
    const std::string path = dir + "/acceptance_report_" + std::to_string(k) + ".json";
    const std::string cmd = "\"" + gqe + "\" example 1 --n 3 --c 1 -o \"" + path + "\" > /dev/null";
    if (std::system(cmd.c_str()) != 0) return {false, "gqe run failed: " + cmd};
    reports[k] = strip(path);
  }
  const bool pass = !reports[0].empty() && reports[0] == reports[1];
  return {pass, fmt("two runs, %.0f bytes each after removing the timestamp line",
                    double(reports[0].size()))};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: acceptance <gqe> <scratch-dir>\n");
    return 2;
  }
  const std::string gqe = argv[1], dir = argv[2];
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"example closed forms", examples_match_closed_forms},
      {"defining-equation residual", defining_equation_residual},
      {"curvature oracle agreement", oracle_agreement},
      {"model scalar curvatures", model_curvatures},
      {"wedge condition", wedge_condition},
      {"transformed equation", transformed_equivalence},
      {"divergence identity", divergence_identity},
      {"sphere witness", sphere_witness},
      {"completeness heuristic", completeness},
      {"report determinism", [&] { return determinism(gqe, dir); }},
  };
  int failures = 0, index = 0;
  for (const auto& [name, fn] : criteria) {
    ++index;
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s %2d %-28s %s\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str());
  }
  std::printf("%d/%d criteria passed\n", index - failures, index);
  return failures == 0 ? 0 : 1;
}
