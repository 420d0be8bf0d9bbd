#pragma once

#include <functional>

namespace gqe {

struct QuadratureOptions {
  double abs_tol = 1e-10;
  /// Effective tolerance is max(abs_tol, rel_tol·|coarse estimate|).
  double rel_tol = 0.0;
  /// Bisection depth cap; 40 levels bounds a panel at (b−a)/2⁴⁰.
  int max_depth = 40;
  /// Every panel is split at least this many times before the error test.
  int min_depth = 3;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
};

/// Adaptive Simpson with Richardson correction. Throws ConvergenceError if a
/// panel hits max_depth above tolerance or the integrand is non-finite.
/// Reversed limits (b < a) return the negated integral.
QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  const QuadratureOptions& options = {});

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        const QuadratureOptions& options = {}) {
  return adaptive_simpson(f, a, b, options).value;
}

}  // namespace gqe
