#pragma once

// Second-order jets: (value, first derivative, second derivative) of a
// function of one real variable, propagated by forward-mode arithmetic.

#include <cmath>

namespace gqe {

struct Jet {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;

  static constexpr Jet constant(double c) { return {c, 0.0, 0.0}; }
  static constexpr Jet variable(double t) { return {t, 1.0, 0.0}; }
};

constexpr Jet operator+(const Jet& a, const Jet& b) {
  return {a.value + b.value, a.d1 + b.d1, a.d2 + b.d2};
}
constexpr Jet operator-(const Jet& a, const Jet& b) {
  return {a.value - b.value, a.d1 - b.d1, a.d2 - b.d2};
}
constexpr Jet operator-(const Jet& a) { return {-a.value, -a.d1, -a.d2}; }
constexpr Jet operator*(const Jet& a, const Jet& b) {
  return {a.value * b.value, a.d1 * b.value + a.value * b.d1,
          a.d2 * b.value + 2.0 * a.d1 * b.d1 + a.value * b.d2};
}
constexpr Jet operator*(double s, const Jet& a) { return {s * a.value, s * a.d1, s * a.d2}; }
constexpr Jet operator*(const Jet& a, double s) { return s * a; }

/// Chain rule for an outer function g given g(y), g'(y), g''(y) at y = a.value.
constexpr Jet chain(const Jet& a, double g0, double g1, double g2) {
  return {g0, g1 * a.d1, g2 * a.d1 * a.d1 + g1 * a.d2};
}

/// Composition outer(inner(t)) when the outer jet is already evaluated at
/// inner.value.
constexpr Jet compose(const Jet& outer_at_inner, const Jet& inner) {
  return chain(inner, outer_at_inner.value, outer_at_inner.d1, outer_at_inner.d2);
}

/// 1/b; caller guarantees b.value != 0.
constexpr Jet reciprocal(const Jet& b) {
  const double inv = 1.0 / b.value;
  return chain(b, inv, -inv * inv, 2.0 * inv * inv * inv);
}

constexpr Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }

inline Jet exp(const Jet& a) {
  const double e = std::exp(a.value);
  return chain(a, e, e, e);
}

inline Jet log(const Jet& a) {
  const double inv = 1.0 / a.value;
  return chain(a, std::log(a.value), inv, -inv * inv);
}

inline Jet sqrt(const Jet& a) {
  const double s = std::sqrt(a.value);
  return chain(a, s, 0.5 / s, -0.25 / (s * a.value));
}

inline Jet tanh(const Jet& a) {
  const double t = std::tanh(a.value);
  const double sech2 = 1.0 - t * t;
  return chain(a, t, sech2, -2.0 * t * sech2);
}

inline Jet cosh(const Jet& a) {
  return chain(a, std::cosh(a.value), std::sinh(a.value), std::cosh(a.value));
}

inline Jet sinh(const Jet& a) {
  return chain(a, std::sinh(a.value), std::cosh(a.value), std::sinh(a.value));
}

/// a^p for a constant exponent. Integer exponents accept negative bases.
inline Jet pow(const Jet& a, double p) {
  if (p == 0.0) return Jet::constant(1.0);
  if (p == 1.0) return a;
  const double g0 = std::pow(a.value, p);
  const double g1 = p * std::pow(a.value, p - 1.0);
  const double g2 = (p == 2.0) ? 2.0 : p * (p - 1.0) * std::pow(a.value, p - 2.0);
  return chain(a, g0, g1, g2);
}

}  // namespace gqe
