#pragma once

// Deterministic sample grids and an order-stable parallel map.

#include <cstdint>
#include <functional>
#include <random>
#include <thread>
#include <vector>

#include "gqe/sym_tensor.hpp"

namespace gqe {

inline constexpr std::uint64_t kDefaultSeed = 20240611;

/// mt19937_64 with hand-rolled conversions, so sequences are identical
/// across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = kDefaultSeed) : engine_(seed) {}
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Box–Muller.
  double normal();
  Vector unit_vector(int n);

 private:
  std::mt19937_64 engine_;
};

struct GridPoint {
  Vector x;
  /// The sampled variable: r = ‖x‖² or u = α·x.
  double t;
};

struct RadialGridSpec {
  int count = 50;
  int directions = 8;
  double r_min = 0.01;
  double r_max = 9.0;
};

struct TranslationGridSpec {
  int count = 50;
  int offsets = 8;
  double u_min = -3.0;
  double u_max = 3.0;
  /// Lateral offsets have Euclidean length ≤ this.
  double lateral = 1.0;
};

/// r log-spaced on [r_min, r_max] crossed with random unit directions;
/// x = √r·dir. Ordered by r, then direction.
std::vector<GridPoint> radial_grid(int n, const RadialGridSpec& spec = {},
                                   std::uint64_t seed = kDefaultSeed);

/// u evenly spaced on [u_min, u_max] crossed with offsets orthogonal to α
/// (the first offset is zero); x = (u/a)α + w.
std::vector<GridPoint> translation_grid(const Vector& alpha, const TranslationGridSpec& spec = {},
                                        std::uint64_t seed = kDefaultSeed);

/// Uniform points in the box [lo, hi]^n.
std::vector<Vector> box_points(int n, int count, double lo, double hi,
                               std::uint64_t seed = kDefaultSeed);

/// Uniform points in a per-axis box.
std::vector<Vector> box_points(const Vector& lo, const Vector& hi, int count,
                               std::uint64_t seed = kDefaultSeed);

/// Evaluates fn(i) for i in [0, count) on up to `threads` workers (0 = all
/// hardware threads, 1 = inline). Results are returned in index order.
template <class T>
std::vector<T> parallel_map(std::size_t count, const std::function<T(std::size_t)>& fn,
                            unsigned threads = 1) {
  std::vector<T> out(count);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  if (threads <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += threads) out[i] = fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace gqe
