#include "gqe/quadrature.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "gqe/error.hpp"

namespace gqe {

namespace {

struct Simpson {
  const std::function<double(double)>& f;
  const QuadratureOptions& opt;
  long evaluations = 0;
  double error = 0.0;
  bool failed = false;

  double eval(double t) {
    ++evaluations;
    const double v = f(t);
    if (!std::isfinite(v)) {
      throw ConvergenceError("quadrature: non-finite integrand at t = " + std::to_string(t));
    }
    return v;
  }

  double recurse(double a, double b, double fa, double fm, double fb, double whole, double tol,
                 int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = eval(lm);
    const double frm = eval(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double both = left + right;
    const double delta = both - whole;
    const bool roundoff_floor =
        std::abs(delta) <= 64.0 * std::numeric_limits<double>::epsilon() * std::abs(both);
    if (depth >= opt.min_depth && (std::abs(delta) <= 15.0 * tol || roundoff_floor)) {
      error += std::abs(delta) / 15.0;
      return both + delta / 15.0;
    }
    if (depth >= opt.max_depth) {
      failed = true;
      error += std::abs(delta) / 15.0;
      return both + delta / 15.0;
    }
    return recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
  }
};

}  // namespace

QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  const QuadratureOptions& options) {
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw InvalidArgument("quadrature limits must be finite");
  }
  if (a == b) return {};
  if (b < a) {
    QuadratureResult r = adaptive_simpson(f, b, a, options);
    r.value = -r.value;
    return r;
  }
  Simpson s{f, options};
  const double fa = s.eval(a);
  const double fb = s.eval(b);
  const double fm = s.eval(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double tol = std::max(options.abs_tol, options.rel_tol * std::abs(whole));
  const double value = s.recurse(a, b, fa, fm, fb, whole, tol, 0);
  if (s.failed) {
    throw ConvergenceError("quadrature did not converge on [" + std::to_string(a) + ", " +
                           std::to_string(b) + "] within depth " +
                           std::to_string(options.max_depth));
  }
  return {value, s.error, s.evaluations};
}

}  // namespace gqe
