#include "gqe/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "gqe/error.hpp"

namespace gqe {

namespace {

void check_step(double h, std::span<const double> x) {
  if (!(h > 0.0) || !std::isfinite(h)) throw InvalidArgument("finite-difference step must be positive");
  for (double xi : x) {
    if (xi + h == xi || xi - h == xi) {
      throw InvalidArgument("finite-difference step underflows at this point");
    }
  }
}

Christoffel christoffel_with_step(const RawMetric& m, std::span<const double> x, double h) {
  const int n = m.dim();
  // dg[k] = ∂_k g
  std::vector<SymTensor> dg;
  Vector y(x.begin(), x.end());
  for (int k = 0; k < n; ++k) {
    y[k] = x[k] + h;
    SymTensor plus = m.at(y);
    y[k] = x[k] - h;
    SymTensor minus = m.at(y);
    y[k] = x[k];
    SymTensor d = plus - minus;
    d *= 1.0 / (2.0 * h);
    dg.push_back(std::move(d));
  }
  const SymTensor ginv = inverse_spd(m.at(x));
  Christoffel gamma(n);
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int l = 0; l < n; ++l) {
          s += ginv(k, l) * (dg[i](l, j) + dg[j](l, i) - dg[l](i, j));
        }
        gamma(k, i, j) = 0.5 * s;
      }
    }
  }
  return gamma;
}

}  // namespace

RawMetric::RawMetric(int n, Components g, StepPolicy steps)
    : n_(n), g_(std::move(g)), steps_(steps) {
  if (n < 1) throw InvalidArgument("raw metric dimension must be positive");
  if (!g_) throw InvalidArgument("raw metric needs a component function");
  if (!(steps.first > 0.0) || !(steps.second > 0.0)) {
    throw InvalidArgument("finite-difference steps must be positive");
  }
}

RawMetric RawMetric::conformal(const ScalarField& phi, StepPolicy steps) {
  const int n = phi.dim();
  return RawMetric(
      n,
      [phi, n](std::span<const double> x) {
        const double p = phi.value(x);
        return SymTensor::identity(n, 1.0 / (p * p));
      },
      steps);
}

RawMetric RawMetric::with_steps(StepPolicy steps) const { return RawMetric(n_, g_, steps); }

SymTensor RawMetric::at(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != n_) throw InvalidArgument("point dimension mismatch");
  SymTensor g = g_(x);
  if (g.dim() != n_) throw InvalidArgument("metric components have the wrong dimension");
  if (!is_positive_definite(g)) throw DomainError("metric is not positive definite");
  return g;
}

Christoffel fd_christoffel(const RawMetric& m, std::span<const double> x) {
  const double h1 = m.steps().h1(x);
  check_step(h1, x);
  return christoffel_with_step(m, x, h1);
}

FdCurvature fd_curvature(const RawMetric& m, std::span<const double> x) {
  const int n = m.dim();
  if (static_cast<int>(x.size()) != n) throw InvalidArgument("point dimension mismatch");
  const double h1 = m.steps().h1(x);
  const double h2 = m.steps().h2(x);
  check_step(h1, x);
  check_step(h2, x);

  FdCurvature out;
  out.n = n;
  out.gamma = christoffel_with_step(m, x, h1);

  // dgamma[μ](ρ, ν, σ) = ∂_μ Γᵖ_νσ
  std::vector<Christoffel> dgamma;
  Vector y(x.begin(), x.end());
  for (int mu = 0; mu < n; ++mu) {
    y[mu] = x[mu] + h2;
    const Christoffel plus = christoffel_with_step(m, y, h1);
    y[mu] = x[mu] - h2;
    const Christoffel minus = christoffel_with_step(m, y, h1);
    y[mu] = x[mu];
    Christoffel d(n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) d(a, b, c) = (plus(a, b, c) - minus(a, b, c)) / (2.0 * h2);
    dgamma.push_back(std::move(d));
  }

  const std::size_t n4 = static_cast<std::size_t>(n) * n * n * n;
  out.riemann_up.assign(n4, 0.0);
  out.riemann_low.assign(n4, 0.0);
  const Christoffel& G = out.gamma;
  for (int r = 0; r < n; ++r) {
    for (int s = 0; s < n; ++s) {
      for (int mu = 0; mu < n; ++mu) {
        for (int nu = 0; nu < n; ++nu) {
          double v = dgamma[mu](r, nu, s) - dgamma[nu](r, mu, s);
          for (int l = 0; l < n; ++l) v += G(r, mu, l) * G(l, nu, s) - G(r, nu, l) * G(l, mu, s);
          out.riemann_up[out.idx(r, s, mu, nu)] = v;
        }
      }
    }
  }

  const SymTensor g = m.at(x);
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s)
      for (int mu = 0; mu < n; ++mu)
        for (int nu = 0; nu < n; ++nu) {
          double v = 0.0;
          for (int a = 0; a < n; ++a) v += g(r, a) * out.up(a, s, mu, nu);
          out.riemann_low[out.idx(r, s, mu, nu)] = v;
        }

  std::vector<double> ric(static_cast<std::size_t>(n) * n, 0.0);
  for (int s = 0; s < n; ++s)
    for (int nu = 0; nu < n; ++nu) {
      double v = 0.0;
      for (int r = 0; r < n; ++r) v += out.up(r, s, r, nu);
      ric[static_cast<std::size_t>(s) * n + nu] = v;
    }
  for (int s = 0; s < n; ++s)
    for (int nu = 0; nu < n; ++nu)
      out.ricci_asymmetry = std::max(out.ricci_asymmetry,
                                     std::abs(ric[static_cast<std::size_t>(s) * n + nu] -
                                              ric[static_cast<std::size_t>(nu) * n + s]));
  out.ricci = SymTensor::symmetrized(n, ric);
  out.scalar = trace_with(inverse_spd(g), out.ricci);
  return out;
}

double relative_gap(const SymTensor& a, const SymTensor& ref) {
  return (a - ref).max_abs() / std::max(1.0, ref.max_abs());
}

}  // namespace gqe
