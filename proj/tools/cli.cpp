#include "cli.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gqe/catalog.hpp"
#include "gqe/error.hpp"
#include "gqe/expression.hpp"
#include "gqe/geometry.hpp"
#include "gqe/grid.hpp"
#include "gqe/oracle.hpp"
#include "gqe/phi_transform.hpp"
#include "gqe/report.hpp"
#include "gqe/rigidity.hpp"
#include "gqe/structure.hpp"
#include "gqe/verify.hpp"

namespace gqe::cli {

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

namespace {

using Json = nlohmann::ordered_json;

// Options that never enter the config echo or its hash.
const std::array<std::string, 5> kUnhashed = {"config", "output", "csv", "threads", "help"};

struct Common {
  std::string output;
  std::string csv;
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 0;
};

struct GridOptions {
  int count = 50;
  int directions = 8;
  double r_min = 0.01;
  double r_max = 9.0;
  double u_min = -3.0;
  double u_max = 3.0;
  double lateral = 1.0;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

struct RunOutput {
  VerificationReport report;
  std::optional<CsvTable> csv;
};

void add_grid_options(CLI::App* sub, GridOptions& g) {
  sub->add_option("--count", g.count, "samples of the symmetry variable")
      ->check(CLI::PositiveNumber);
  sub->add_option("--directions", g.directions, "directions (radial) or lateral offsets")
      ->check(CLI::PositiveNumber);
  sub->add_option("--r-min", g.r_min, "smallest r = |x|^2 of a radial grid");
  sub->add_option("--r-max", g.r_max, "largest r of a radial grid");
  sub->add_option("--u-min", g.u_min, "smallest u of a translation grid");
  sub->add_option("--u-max", g.u_max, "largest u of a translation grid");
  sub->add_option("--lateral", g.lateral, "length bound of lateral offsets");
}

void add_tolerance_options(CLI::App* sub, StructureTolerances& t) {
  sub->add_option("--tol-residual", t.residual)->check(CLI::PositiveNumber);
  sub->add_option("--tol-lambda", t.lambda_consistency)->check(CLI::PositiveNumber);
  sub->add_option("--tol-wedge", t.wedge)->check(CLI::PositiveNumber);
  sub->add_option("--tol-transformed", t.transformed)->check(CLI::PositiveNumber);
  sub->add_option("--tol-potential", t.potential)->check(CLI::PositiveNumber);
  sub->add_option("--tol-divergence", t.divergence)->check(CLI::PositiveNumber);
}

Vector unit_alpha(const std::vector<double>& alpha, int n) {
  if (alpha.empty()) {
    Vector e(n, 0.0);
    e[0] = 1.0;
    return e;
  }
  if (static_cast<int>(alpha.size()) != n) {
    throw InvalidArgument("--alpha has " + std::to_string(alpha.size()) +
                          " components, expected n = " + std::to_string(n));
  }
  return Vector(alpha.begin(), alpha.end());
}

void require_dimension(int n) {
  if (n < 3) throw InvalidArgument("dimension must satisfy n >= 3");
}

std::vector<GridPoint> make_grid(const GqeStructure& s, const GridOptions& g,
                                 std::uint64_t seed, std::pair<double, double>& range) {
  if (s.f.is_radial()) {
    if (!(g.r_min > 0.0 && g.r_max > g.r_min)) {
      throw InvalidArgument("radial grid needs 0 < r-min < r-max");
    }
    range = {0.0, g.r_max};
    return radial_grid(s.dim(), RadialGridSpec{g.count, g.directions, g.r_min, g.r_max}, seed);
  }
  const auto& alpha = std::get<Translation>(s.f.kind()).alpha;
  TranslationGridSpec spec{g.count, g.directions, g.u_min, g.u_max, g.lateral};
  const Interval d = s.phi().profile().domain();
  spec.u_min = std::max(spec.u_min, d.lo + 0.5);
  spec.u_max = std::min(spec.u_max, d.hi - 0.5);
  if (!(spec.u_max > spec.u_min)) throw InvalidArgument("translation grid is empty");
  range = {spec.u_min, spec.u_max};
  return translation_grid(alpha, spec, seed);
}

bool point_skipped(const GqeStructure& s, std::span<const double> x) {
  if (!(std::abs(s.phi().value(x)) >= kSkipConformalFactor)) return true;
  try {
    s.nu.value(x);
  } catch (const DegenerateInput&) {
    return true;
  }
  return false;
}

CsvTable structure_table(const GqeStructure& s, const std::vector<GridPoint>& points) {
  CsvTable t;
  t.header = {s.f.is_radial() ? "r" : "u", "nu", "lambda", "S", "residual"};
  for (const auto& p : points) {
    if (point_skipped(s, p.x)) continue;
    try {
      t.rows.push_back({p.t, s.nu.value(p.x), s.lambda.value(p.x),
                        scalar_curvature_at(s.metric, p.x), residual_at(s, p.x).max_abs()});
    } catch (const Error&) {
      // Rows are plot data only; failures are already in the report.
    }
  }
  return t;
}

double relative_error(double value, double expected) {
  const double diff = std::abs(value - expected);
  if (diff == 0.0) return 0.0;
  return diff / std::abs(expected);
}

GqeStructure named_structure(const std::string& name, int n, double c,
                             const std::vector<double>& alpha) {
  if (name == "example1") return example1(n, c);
  if (name == "example2") return example2(n, c);
  if (name == "example3") return example3(unit_alpha(alpha, n));
  if (name == "flat") return flat_gaussian(n, c);
  if (name == "hyperbolic") return hyperbolic_witness(n);
  throw InvalidArgument("unknown structure '" + name + "'");
}

const std::vector<std::string> kStructureNames = {"example1", "example2", "example3", "flat",
                                                   "hyperbolic"};

// ---------------------------------------------------------------------------
// verify / example

struct VerifyOptions {
  std::string family = "radial";
  int n = 3;
  std::string phi;
  std::string f;
  std::vector<double> alpha;
  double lambda_offset = 0.0;
  bool transform = false;
  double c1 = 1.0;
  double c2 = 0.0;
  GridOptions grid;
  StructureTolerances tol;
};

RunOutput verify_with_grid(const GqeStructure& s, const GridOptions& grid, bool transform,
                           double c1, double c2, const StructureTolerances& tol,
                           const Common& common, bool want_csv) {
  std::pair<double, double> range;
  const auto points = make_grid(s, grid, common.seed, range);
  std::optional<PhiTransform> pt;
  if (transform) pt.emplace(potential_transform(s, range.first, range.second, c1, c2));
  RunOutput out{verify_structure(s, points, tol, pt ? &*pt : nullptr, common.threads), {}};
  out.report.set_value("max_residual", out.report.check("residual").max_gap());
  out.report.set_value("grid_points", static_cast<double>(points.size()));
  if (want_csv) out.csv = structure_table(s, points);
  return out;
}

RunOutput run_verify(const VerifyOptions& o, const Common& common) {
  require_dimension(o.n);
  GqeStructure s = [&] {
    if (o.family == "radial") {
      return radial_structure(resolve_profile(o.phi, "r"), resolve_profile(o.f, "r"), o.n,
                              "verify");
    }
    return translation_structure(resolve_profile(o.phi, "u"), resolve_profile(o.f, "u"),
                                 unit_alpha(o.alpha, o.n), "verify");
  }();
  if (o.lambda_offset != 0.0) s = with_lambda_offset(s, o.lambda_offset);
  return verify_with_grid(s, o.grid, o.transform, o.c1, o.c2, o.tol, common, !common.csv.empty());
}

struct ExampleOptions {
  int id = 1;
  int n = 3;
  double c = 1.0;
  std::vector<double> alpha;
  double lambda_offset = 0.0;
  bool no_transform = false;
  double tol_closed_form = 1e-10;
  GridOptions grid;
  StructureTolerances tol;
};

RunOutput run_example(const ExampleOptions& o, const Common& common) {
  require_dimension(o.n);
  const Vector alpha = unit_alpha(o.alpha, o.n);
  GqeStructure s = o.id == 1 ? example1(o.n, o.c) : o.id == 2 ? example2(o.n, o.c) : example3(alpha);
  if (o.lambda_offset != 0.0) s = with_lambda_offset(s, o.lambda_offset);

  RunOutput out = verify_with_grid(s, o.grid, !o.no_transform, 1.0, 0.0, o.tol, common,
                                   !common.csv.empty());

  std::pair<double, double> range;
  const auto points = make_grid(s, o.grid, common.seed, range);
  const double a = dot(alpha, alpha);
  auto closed = [&](double t) {
    if (o.id == 1) return example1_closed_form(o.n, o.c, t);
    if (o.id == 2) return example2_closed_form(o.n, o.c, t);
    return example3_closed_form(o.n, a, t);
  };
  const std::vector<CheckSpec> specs = {{"closed_form_nu", o.tol_closed_form},
                                        {"closed_form_lambda", o.tol_closed_form},
                                        {"closed_form_scalar", o.tol_closed_form}};
  const auto eval = [&](std::size_t i) {
    const GridPoint& p = points[i];
    const ClosedForm cf = closed(p.t);
    return std::vector<double>{relative_error(s.nu.value(p.x), cf.nu),
                               relative_error(s.lambda.value(p.x), cf.lambda),
                               relative_error(scalar_curvature_at(s.metric, p.x), cf.scalar)};
  };
  const auto skip = [&](std::size_t i) { return point_skipped(s, points[i].x); };
  out.report.append(evaluate_on_points(specs, points.size(), eval, skip, common.threads));
  return out;
}

// ---------------------------------------------------------------------------
// curvature

struct CurvatureOptions {
  std::string metric = "sphere";
  std::string phi;
  std::string family = "radial";
  std::vector<double> alpha;
  int n = 3;
  int points = 20;
  double half_width = 0.0;
  double rho = 1.0;
  double step_first = StepPolicy{}.first;
  double step_second = StepPolicy{}.second;
  double tol_oracle = 5e-6;
};

RunOutput run_curvature(const CurvatureOptions& o, const Common& common) {
  require_dimension(o.n);
  if (o.points < 1) throw InvalidArgument("--points must be positive");
  std::optional<ConformalMetric> metric;
  if (!o.phi.empty()) {
    metric.emplace(o.family == "radial"
                       ? ScalarField::radial(resolve_profile(o.phi, "r"), o.n)
                       : ScalarField::translation(resolve_profile(o.phi, "u"),
                                                  unit_alpha(o.alpha, o.n)));
  } else if (o.metric == "euclidean") {
    metric.emplace(euclidean_metric(o.n));
  } else if (o.metric == "sphere") {
    metric.emplace(sphere_chart_metric(o.n));
  } else if (o.metric == "ball") {
    metric.emplace(ball_chart_metric(o.n));
  } else if (o.metric == "half-space") {
    metric.emplace(half_space_metric(o.n, o.rho));
  } else if (o.metric == "example1") {
    metric.emplace(example1_metric(o.n));
  } else {
    throw InvalidArgument("unknown metric '" + o.metric + "'");
  }

  double w = o.half_width > 0.0 ? o.half_width : (o.metric == "ball" && o.phi.empty() ? 0.5 : 1.0);
  Vector lo(o.n, -w), hi(o.n, w);
  if (o.metric == "half-space" && o.phi.empty()) {
    lo[o.n - 1] = 0.5;
    hi[o.n - 1] = 2.5;
  }
  const auto points = box_points(lo, hi, o.points, common.seed);
  const StepPolicy steps{o.step_first, o.step_second};
  const RawMetric raw = RawMetric::conformal(metric->factor(), steps);
  const RawMetric half = raw.with_steps(steps.scaled(0.5));

  const std::vector<CheckSpec> specs = {{"ricci_oracle", o.tol_oracle},
                                        {"ricci_oracle_half_step", o.tol_oracle},
                                        {"scalar_oracle", o.tol_oracle, false}};
  std::vector<double> ratios(points.size(), std::nan(""));
  const auto eval = [&](std::size_t i) {
    const Vector& x = points[i];
    const SymTensor ric = ricci_at(*metric, x);
    const FdCurvature full = fd_curvature(raw, x);
    const FdCurvature halved = fd_curvature(half, x);
    const double g1 = relative_gap(full.ricci, ric);
    const double g2 = relative_gap(halved.ricci, ric);
    if (g2 > 0.0) ratios[i] = g1 / g2;
    const double s = scalar_curvature_at(*metric, x);
    return std::vector<double>{g1, g2, std::abs(full.scalar - s) / std::max(1.0, std::abs(s))};
  };
  RunOutput out{evaluate_on_points(specs, points.size(), eval, {}, common.threads), {}};

  std::vector<double> finite;
  for (double r : ratios) {
    if (std::isfinite(r)) finite.push_back(r);
  }
  double median = std::nan("");
  if (!finite.empty()) {
    std::sort(finite.begin(), finite.end());
    median = finite[finite.size() / 2];
  }
  out.report.set_value("halving_ratio_median", median);
  out.report.set_value("step_first", steps.first);
  out.report.set_value("step_second", steps.second);
  return out;
}

// ---------------------------------------------------------------------------
// invariants

struct InvariantsOptions {
  std::vector<std::string> structures = kStructureNames;
  int n = 3;
  double c = 1.0;
  GridOptions grid;
  StructureTolerances tol;
};

RunOutput run_invariants(const InvariantsOptions& o, const Common& common) {
  require_dimension(o.n);
  RunOutput out;
  for (const auto& name : o.structures) {
    const GqeStructure s = named_structure(name, o.n, o.c, {});
    const RunOutput one = verify_with_grid(s, o.grid, true, 1.0, 0.0, o.tol, common, false);
    out.report.append(one.report, name + ".");
  }
  // φ ≡ 1, f = x₁ + x₂², ν = x₃: the wedge invariant is 8x₂, so 8 at x₂ = 1.
  const GqeStructure w = wedge_counterexample();
  const Vector x = {0.3, 1.0, -0.2};
  const double wedge = wedge_invariant_at(w, x);
  CheckResult& c = out.report.add_check("counterexample.wedge_at_x2_1", o.tol.wedge);
  c.add(std::abs(wedge - 8.0));
  out.report.set_value("counterexample.wedge_at_x2_1", wedge);
  return out;
}

// ---------------------------------------------------------------------------
// sphere-witness

struct SphereOptions {
  int n = 3;
  std::string v = "0";
  double c = 0.0;
  GridOptions grid;
  SphereWitnessOptions opts;
};

RunOutput run_sphere(const SphereOptions& o, const Common& common) {
  require_dimension(o.n);
  if (!(o.grid.r_max <= 9.0)) throw InvalidArgument("sphere witness needs r-max <= 9");
  const auto grid = radial_grid(
      o.n, RadialGridSpec{o.grid.count, o.grid.directions, o.grid.r_min, o.grid.r_max},
      common.seed);
  std::vector<Vector> points;
  points.reserve(grid.size());
  for (const auto& p : grid) points.push_back(p.x);
  RunOutput out{sphere_witness_verify(o.n, resolve_profile(o.v, "t"), o.c, points, o.opts), {}};
  if (!common.csv.empty()) {
    const PhiTransform pt(resolve_profile(o.v, "t"), o.opts.c1, o.opts.c2, o.opts.t0, o.opts.lo,
                          o.opts.hi);
    const SphereWitness w = make_sphere_witness(o.n, pt, o.c, o.grid.r_max);
    out.csv = structure_table(w.structure, grid);
  }
  return out;
}

// ---------------------------------------------------------------------------
// karp

struct KarpCliOptions {
  std::string structure = "example1";
  int n = 3;
  double c = 1.0;
  std::vector<double> radii = {0.5, 1.0, 2.0};
  double tol_karp = 1e-8;
  KarpOptions quad;
};

RunOutput run_karp(const KarpCliOptions& o, const Common&) {
  require_dimension(o.n);
  std::optional<GqeStructure> s;
  std::optional<PhiTransform> pt;
  bool einstein = true;
  const Profile1D zero = Profile1D::constant(0.0);
  if (o.structure == "example1" || o.structure == "example2") {
    s = named_structure(o.structure, o.n, o.c, {});
    pt.emplace(potential_transform(*s, 0.0, 9.0));
    einstein = false;
  } else if (o.structure == "ball") {
    s = radial_structure(ball_chart_metric(o.n).factor().profile(), Profile1D::identity(), o.n,
                         "ball");
    pt.emplace(zero, 1.0, 0.0, 0.0, -1.0, 2.0);
  } else if (o.structure == "sphere") {
    s = radial_structure(sphere_chart_metric(o.n).factor().profile(), Profile1D::identity(),
                         o.n, "sphere");
    pt.emplace(zero, 1.0, 0.0, 0.0, -1.0, 1e4);
  } else if (o.structure == "euclidean") {
    s = flat_gaussian(o.n, o.c);
    pt.emplace(zero, 1.0, 0.0, 0.0, -1.0, 1e4);
  } else {
    throw InvalidArgument("karp needs a radial structure: example1, example2, ball, sphere or "
                          "euclidean; got '" + o.structure + "'");
  }

  RunOutput out;
  CheckResult& check = out.report.add_check("karp_annulus", o.tol_karp, einstein);
  for (double rg : o.radii) {
    if (!(rg > 0.0)) throw InvalidArgument("geodesic radii must be positive");
    std::ostringstream key;
    key << "karp[r_g=" << rg << "]";
    try {
      const double value = karp_annulus(*s, *pt, rg, o.quad);
      check.add(value);
      out.report.set_value(key.str(), value);
    } catch (const DomainError& e) {
      check.fail(e.what());
      out.report.set_value(key.str(), std::nan(""));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// complete-check

struct CompleteOptions {
  std::vector<std::string> structures = {"example1", "example2", "example3"};
  int n = 3;
  double c = 1.0;
  std::vector<double> lengths = {1.0, 10.0, 100.0};
  std::vector<double> direction;
  int sup_samples = 4096;
  double tol = 1e-10;
};

double sup_phi_on_segment(const GqeStructure& s, const Vector& dir, double T, int samples) {
  double sup = 0.0;
  Vector x(dir.size());
  for (int k = 0; k <= samples; ++k) {
    const double t = T * k / samples;
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = t * dir[i];
    sup = std::max(sup, std::abs(s.phi().value(x)));
  }
  return sup;
}

RunOutput run_complete(const CompleteOptions& o, const Common&) {
  require_dimension(o.n);
  RunOutput out;
  for (const auto& name : o.structures) {
    const GqeStructure s = named_structure(name, o.n, o.c, {});
    Vector dir = unit_alpha(o.direction, o.n);
    const double len = norm2(dir);
    if (!(len > 0.0)) throw InvalidArgument("--direction must be non-zero");
    for (double& d : dir) d /= len;

    CheckResult& bound = out.report.add_check(name + ".length_bound", o.tol);
    CheckResult& monotone = out.report.add_check(name + ".monotone", 0.0);
    double previous = 0.0;
    for (double T : o.lengths) {
      if (!(T > 0.0)) throw InvalidArgument("ray lengths must be positive");
      std::ostringstream key;
      key << name << ".length[T=" << T << "]";
      try {
        const double length = ray_length(s, dir, T);
        const double lower = T / sup_phi_on_segment(s, dir, T, o.sup_samples);
        bound.add(std::max(0.0, lower - length) / std::max(1.0, lower));
        monotone.add(std::max(0.0, previous - length));
        previous = length;
        out.report.set_value(key.str(), length);
      } catch (const DomainError& e) {
        bound.fail(e.what());
        out.report.set_value(key.str(), std::nan(""));
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// models

struct ModelsOptions {
  std::vector<std::string> kinds = {"euclidean", "hyperbolic", "warped", "sphere"};
  int n = 3;
  double param = 1.0;
  int points = 20;
  double tol_scalar = 1e-6;
  double tol_einstein = 1e-8;
};

RunOutput run_models(const ModelsOptions& o, const Common& common) {
  require_dimension(o.n);
  RunOutput out;
  for (const auto& kind : o.kinds) {
    ConformalMetric chart = euclidean_metric(o.n);
    double expected = 0.0;
    std::vector<Vector> points;
    std::string name;
    if (kind == "sphere") {
      chart = sphere_chart_metric(o.n);
      expected = o.n * (o.n - 1.0);
      points = box_points(o.n, o.points, -1.0, 1.0, common.seed);
      name = "sphere_chart";
    } else {
      const ModelSpace m = model_space(parse_model_kind(kind), o.param, o.n);
      chart = m.chart;
      expected = m.expected_scalar_curvature;
      points = model_sample_points(m, o.points, common.seed);
      name = m.name;
    }
    const std::vector<CheckSpec> specs = {{name + ".scalar_curvature", o.tol_scalar},
                                          {name + ".einstein", o.tol_einstein}};
    const auto eval = [&](std::size_t i) {
      const ConformalPoint p = chart.at(points[i]);
      return std::vector<double>{std::abs(p.scalar_curvature() - expected),
                                 p.norm(p.traceless(p.ricci()))};
    };
    out.report.append(evaluate_on_points(specs, points.size(), eval, {}, common.threads));
    out.report.set_value(name + ".expected_scalar_curvature", expected);
  }
  return out;
}

// ---------------------------------------------------------------------------
// report emission

Json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

std::string hex64(std::uint64_t h) {
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << h;
  return s.str();
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

bool hashed(const CLI::Option* opt) {
  const std::string name = opt->get_single_name();
  return std::find(kUnhashed.begin(), kUnhashed.end(), name) == kUnhashed.end();
}

std::string option_value(const CLI::Option* opt) {
  if (opt->get_expected_min() == 0) return opt->count() > 0 && opt->as<bool>() ? "true" : "false";
  if (opt->count() == 0) {
    const std::string d = opt->get_default_str();
    return d == "{}" ? std::string{} : d;
  }
  std::string joined;
  for (const auto& r : opt->results()) {
    if (!joined.empty()) joined += ",";
    joined += r;
  }
  return joined;
}

std::map<std::string, std::string> effective_config(const CLI::App& app, const CLI::App& sub) {
  std::map<std::string, std::string> config;
  for (const CLI::App* a : {&app, &sub}) {
    for (const CLI::Option* opt : a->get_options()) {
      if (!hashed(opt)) continue;
      config[opt->get_single_name()] = option_value(opt);
    }
  }
  return config;
}

Json report_json(const std::string& subcommand, const std::map<std::string, std::string>& config,
                 std::uint64_t seed, const VerificationReport& report) {
  std::string canonical = "subcommand=" + subcommand + "\n";
  for (const auto& [k, v] : config) canonical += k + "=" + v + "\n";

  Json j;
  j["tool"] = "gqe";
  j["subcommand"] = subcommand;
  j["config"] = Json::object();
  for (const auto& [k, v] : config) j["config"][k] = v;
  j["config_hash"] = hex64(fnv1a64(canonical));
  j["seed"] = seed;
  j["checks"] = Json::array();
  for (const CheckResult& c : report.checks()) {
    Json e;
    e["name"] = c.name();
    e["max_gap"] = number(c.max_gap());
    e["mean_gap"] = number(c.mean_gap());
    e["tol"] = number(c.tol());
    e["pass"] = c.pass();
    e["asserted"] = c.asserted();
    e["points_evaluated"] = c.points_evaluated();
    e["points_skipped"] = c.points_skipped();
    if (!c.failure().empty()) e["failure"] = c.failure();
    j["checks"].push_back(std::move(e));
  }
  j["values"] = Json::object();
  for (const auto& [k, v] : report.values()) j["values"][k] = number(v);
  j["overall_pass"] = report.overall_pass();
  j["timestamp"] = utc_timestamp();
  return j;
}

void write_csv(std::ostream& os, const CsvTable& t) {
  for (std::size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << t.header[i];
  os << "\n" << std::setprecision(17);
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << "\n";
  }
}

void print_syntax_error(std::ostream& err, const std::string& text, const SyntaxError& e) {
  err << "error: " << e.what() << "\n  " << text << "\n  "
      << std::string(std::min(e.position(), text.size()), ' ') << "^\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized quasi-Einstein structures on conformally flat R^n", "gqe"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.set_config("--config", "", "key = value file mirroring the flags; flags take precedence");

  Common common;
  app.add_option("-o,--output", common.output, "write the JSON report here instead of stdout");
  app.add_option("--csv", common.csv, "write plot data as CSV");
  app.add_option("--seed", common.seed, "seed for sampled points");
  app.add_option("--threads", common.threads, "worker threads, 0 = all cores");

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "verify a radial or translation family");
  verify_cmd->add_option("--family", verify.family)->check(CLI::IsMember({"radial", "translation"}));
  verify_cmd->add_option("--n", verify.n, "dimension");
  verify_cmd->add_option("--phi", verify.phi, "conformal factor: catalog name or expression")
      ->required();
  verify_cmd->add_option("--f", verify.f, "potential: catalog name or expression")->required();
  verify_cmd->add_option("--alpha", verify.alpha, "translation direction")->delimiter(',');
  verify_cmd->add_option("--lambda-offset", verify.lambda_offset);
  verify_cmd->add_flag("--transform", verify.transform, "also check the transformed equation");
  verify_cmd->add_option("--c1", verify.c1);
  verify_cmd->add_option("--c2", verify.c2);
  add_grid_options(verify_cmd, verify.grid);
  add_tolerance_options(verify_cmd, verify.tol);

  ExampleOptions example;
  auto* example_cmd = app.add_subcommand("example", "verify one of the worked examples");
  example_cmd->add_option("id", example.id, "1, 2 or 3")->required()->check(CLI::IsMember({1, 2, 3}));
  example_cmd->add_option("--n", example.n, "dimension");
  example_cmd->add_option("--c", example.c, "potential scale (examples 1 and 2)");
  example_cmd->add_option("--alpha", example.alpha, "direction (example 3)")->delimiter(',');
  example_cmd->add_option("--lambda-offset", example.lambda_offset);
  example_cmd->add_flag("--no-transform", example.no_transform);
  example_cmd->add_option("--tol-closed-form", example.tol_closed_form)->check(CLI::PositiveNumber);
  add_grid_options(example_cmd, example.grid);
  add_tolerance_options(example_cmd, example.tol);

  CurvatureOptions curvature;
  auto* curvature_cmd = app.add_subcommand("curvature", "closed-form Ricci against the oracle");
  curvature_cmd->add_option("--metric", curvature.metric)
      ->check(CLI::IsMember({"euclidean", "sphere", "ball", "half-space", "example1"}));
  curvature_cmd->add_option("--phi", curvature.phi, "custom conformal factor");
  curvature_cmd->add_option("--family", curvature.family)
      ->check(CLI::IsMember({"radial", "translation"}));
  curvature_cmd->add_option("--alpha", curvature.alpha)->delimiter(',');
  curvature_cmd->add_option("--n", curvature.n);
  curvature_cmd->add_option("--points", curvature.points);
  curvature_cmd->add_option("--half-width", curvature.half_width, "sample box half width");
  curvature_cmd->add_option("--rho", curvature.rho, "half-space scale");
  curvature_cmd->add_option("--step-first", curvature.step_first)->check(CLI::PositiveNumber);
  curvature_cmd->add_option("--step-second", curvature.step_second)->check(CLI::PositiveNumber);
  curvature_cmd->add_option("--tol-oracle", curvature.tol_oracle)->check(CLI::PositiveNumber);

  InvariantsOptions invariants;
  auto* invariants_cmd = app.add_subcommand("invariants", "wedge, traceless and divergence checks");
  invariants_cmd->add_option("--structures", invariants.structures)
      ->delimiter(',')
      ->check(CLI::IsMember(kStructureNames));
  invariants_cmd->add_option("--n", invariants.n);
  invariants_cmd->add_option("--c", invariants.c);
  add_grid_options(invariants_cmd, invariants.grid);
  add_tolerance_options(invariants_cmd, invariants.tol);

  SphereOptions sphere;
  auto* sphere_cmd = app.add_subcommand("sphere-witness", "potential on the round sphere chart");
  sphere_cmd->add_option("--n", sphere.n);
  sphere_cmd->add_option("--v", sphere.v, "v(t): catalog name or expression in t");
  sphere_cmd->add_option("--c", sphere.c);
  sphere_cmd->add_option("--c1", sphere.opts.c1);
  sphere_cmd->add_option("--c2", sphere.opts.c2);
  sphere_cmd->add_option("--t0", sphere.opts.t0);
  sphere_cmd->add_option("--t-lo", sphere.opts.lo);
  sphere_cmd->add_option("--t-hi", sphere.opts.hi);
  sphere_cmd->add_option("--tol-residual", sphere.opts.residual_tol)->check(CLI::PositiveNumber);
  sphere_cmd->add_option("--tol-height", sphere.opts.height_tol)->check(CLI::PositiveNumber);
  sphere_cmd->add_option("--tol-hessian", sphere.opts.hessian_tol)->check(CLI::PositiveNumber);
  sphere_cmd->add_option("--tol-transformed", sphere.opts.transformed_tol)
      ->check(CLI::PositiveNumber);
  sphere_cmd->add_option("--tol-lambda", sphere.opts.lambda_tol)->check(CLI::PositiveNumber);
  sphere_cmd->add_option("--tol-curvature", sphere.opts.curvature_tol)->check(CLI::PositiveNumber);
  sphere_cmd->add_option("--tol-einstein", sphere.opts.einstein_tol)->check(CLI::PositiveNumber);
  sphere_cmd->add_option("--tol-divergence", sphere.opts.divergence_tol)
      ->check(CLI::PositiveNumber);
  add_grid_options(sphere_cmd, sphere.grid);

  KarpCliOptions karp;
  auto* karp_cmd = app.add_subcommand("karp", "Karp annulus quantity at several radii");
  karp_cmd->add_option("--structure", karp.structure)
      ->check(CLI::IsMember({"example1", "example2", "ball", "sphere", "euclidean"}));
  karp_cmd->add_option("--n", karp.n);
  karp_cmd->add_option("--c", karp.c);
  karp_cmd->add_option("--radii", karp.radii, "geodesic radii r_g")->delimiter(',');
  karp_cmd->add_option("--tol-karp", karp.tol_karp)->check(CLI::PositiveNumber);
  karp_cmd->add_option("--quad-abs-tol", karp.quad.quad_abs_tol)->check(CLI::PositiveNumber);
  karp_cmd->add_option("--quad-rel-tol", karp.quad.quad_rel_tol)->check(CLI::NonNegativeNumber);

  CompleteOptions complete;
  auto* complete_cmd = app.add_subcommand("complete-check", "ray lengths against T/sup|phi|");
  complete_cmd->add_option("--structures", complete.structures)
      ->delimiter(',')
      ->check(CLI::IsMember(kStructureNames));
  complete_cmd->add_option("--n", complete.n);
  complete_cmd->add_option("--c", complete.c);
  complete_cmd->add_option("--lengths", complete.lengths, "segment lengths T")->delimiter(',');
  complete_cmd->add_option("--direction", complete.direction)->delimiter(',');
  complete_cmd->add_option("--sup-samples", complete.sup_samples)->check(CLI::PositiveNumber);
  complete_cmd->add_option("--tol", complete.tol)->check(CLI::PositiveNumber);

  ModelsOptions models;
  auto* models_cmd = app.add_subcommand("models", "scalar curvature of the model charts");
  models_cmd->add_option("--kinds", models.kinds)
      ->delimiter(',')
      ->check(CLI::IsMember({"euclidean", "hyperbolic", "hyperbolic-half-space", "warped",
                             "warped-flat-fiber", "sphere"}));
  models_cmd->add_option("--n", models.n);
  models_cmd->add_option("--param", models.param, "rho (half-space) or k (warped)");
  models_cmd->add_option("--points", models.points)->check(CLI::PositiveNumber);
  models_cmd->add_option("--tol-scalar", models.tol_scalar)->check(CLI::PositiveNumber);
  models_cmd->add_option("--tol-einstein", models.tol_einstein)->check(CLI::PositiveNumber);

  std::string expression;
  std::string variable = "r";
  auto* parse_cmd = app.add_subcommand("parse-check", "parse an expression and print it back");
  parse_cmd->add_option("expression", expression)->required();
  parse_cmd->add_option("--var", variable, "free variable");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  if (parse_cmd->parsed()) {
    try {
      const Expression e = Expression::parse(expression, variable);
      out << e.to_string() << "\n";
      return kExitPass;
    } catch (const SyntaxError& e) {
      print_syntax_error(err, expression, e);
      return kExitUsage;
    }
  }

  std::unique_ptr<std::ofstream> report_file;
  std::unique_ptr<std::ofstream> csv_file;
  if (!common.output.empty()) {
    report_file = std::make_unique<std::ofstream>(common.output);
    if (!*report_file) {
      err << "error: cannot write report to '" << common.output << "'\n";
      return kExitUsage;
    }
  }
  if (!common.csv.empty()) {
    csv_file = std::make_unique<std::ofstream>(common.csv);
    if (!*csv_file) {
      err << "error: cannot write CSV to '" << common.csv << "'\n";
      return kExitUsage;
    }
  }

  const CLI::App* selected = app.get_subcommands().front();
  RunOutput result;
  try {
    if (selected == verify_cmd) result = run_verify(verify, common);
    else if (selected == example_cmd) result = run_example(example, common);
    else if (selected == curvature_cmd) result = run_curvature(curvature, common);
    else if (selected == invariants_cmd) result = run_invariants(invariants, common);
    else if (selected == sphere_cmd) result = run_sphere(sphere, common);
    else if (selected == karp_cmd) result = run_karp(karp, common);
    else if (selected == complete_cmd) result = run_complete(complete, common);
    else result = run_models(models, common);
  } catch (const SyntaxError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFail;
  }

  const Json j = report_json(selected->get_name(), effective_config(app, *selected), common.seed,
                             result.report);
  std::ostream& sink = report_file ? *report_file : out;
  sink << j.dump(2) << "\n";
  if (report_file) {
    out << selected->get_name() << ": " << (result.report.overall_pass() ? "PASS" : "FAIL")
        << " (" << result.report.checks().size() << " checks)\n";
  }
  if (csv_file) {
    if (result.csv) {
      write_csv(*csv_file, *result.csv);
    } else {
      err << "note: " << selected->get_name() << " produces no plot data\n";
    }
  }
  if (!result.report.overall_pass()) {
    for (const CheckResult& c : result.report.checks()) {
      if (c.pass()) continue;
      err << "FAIL " << c.name() << ": max_gap " << c.max_gap() << " > tol " << c.tol();
      if (!c.failure().empty()) err << " (" << c.failure() << ")";
      err << "\n";
    }
    return kExitFail;
  }
  return kExitPass;
}

}  // namespace gqe::cli
