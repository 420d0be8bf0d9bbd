#include "gqe/grid.hpp"

#include <cmath>
#include <numbers>

#include "gqe/error.hpp"

namespace gqe {

double Rng::normal() {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Vector Rng::unit_vector(int n) {
  Vector v(n);
  double len = 0.0;
  while (len < 1e-8) {
    for (auto& c : v) c = normal();
    len = norm2(v);
  }
  for (auto& c : v) c /= len;
  return v;
}

std::vector<GridPoint> radial_grid(int n, const RadialGridSpec& spec, std::uint64_t seed) {
  if (n < 1 || spec.count < 1 || spec.directions < 1) {
    throw InvalidArgument("radial grid must be non-empty");
  }
  if (!(spec.r_min > 0.0) || !(spec.r_max >= spec.r_min)) {
    throw InvalidArgument("radial grid needs 0 < r_min <= r_max");
  }
  Rng rng(seed);
  std::vector<Vector> dirs;
  for (int d = 0; d < spec.directions; ++d) dirs.push_back(rng.unit_vector(n));

  std::vector<GridPoint> out;
  const double l0 = std::log(spec.r_min);
  const double l1 = std::log(spec.r_max);
  for (int k = 0; k < spec.count; ++k) {
    const double r =
        spec.count == 1 ? spec.r_min : std::exp(l0 + (l1 - l0) * k / (spec.count - 1));
    for (const auto& dir : dirs) {
      GridPoint p{Vector(n), r};
      for (int i = 0; i < n; ++i) p.x[i] = std::sqrt(r) * dir[i];
      out.push_back(std::move(p));
    }
  }
  return out;
}

std::vector<GridPoint> translation_grid(const Vector& alpha, const TranslationGridSpec& spec,
                                        std::uint64_t seed) {
  const int n = static_cast<int>(alpha.size());
  const double a = dot(alpha, alpha);
  if (!(a > 0.0)) throw DegenerateInput("translation grid needs a nonzero direction");
  if (spec.count < 1 || spec.offsets < 1) throw InvalidArgument("translation grid must be non-empty");

  Rng rng(seed);
  std::vector<Vector> offsets{Vector(n, 0.0)};
  while (static_cast<int>(offsets.size()) < spec.offsets) {
    Vector w = rng.unit_vector(n);
    const double proj = dot(w, alpha) / a;
    for (int i = 0; i < n; ++i) w[i] -= proj * alpha[i];
    const double len = norm2(w);
    if (len < 1e-6) continue;
    const double scale = spec.lateral * rng.uniform() / len;
    for (auto& c : w) c *= scale;
    offsets.push_back(std::move(w));
  }

  std::vector<GridPoint> out;
  for (int k = 0; k < spec.count; ++k) {
    const double u = spec.count == 1
                         ? spec.u_min
                         : spec.u_min + (spec.u_max - spec.u_min) * k / (spec.count - 1);
    for (const auto& w : offsets) {
      GridPoint p{Vector(n), u};
      for (int i = 0; i < n; ++i) p.x[i] = u / a * alpha[i] + w[i];
      out.push_back(std::move(p));
    }
  }
  return out;
}

std::vector<Vector> box_points(int n, int count, double lo, double hi, std::uint64_t seed) {
  return box_points(Vector(n, lo), Vector(n, hi), count, seed);
}

std::vector<Vector> box_points(const Vector& lo, const Vector& hi, int count,
                               std::uint64_t seed) {
  if (lo.size() != hi.size()) throw InvalidArgument("box bounds differ in dimension");
  Rng rng(seed);
  std::vector<Vector> out;
  for (int k = 0; k < count; ++k) {
    Vector x(lo.size());
    for (std::size_t i = 0; i < lo.size(); ++i) x[i] = rng.uniform(lo[i], hi[i]);
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace gqe
