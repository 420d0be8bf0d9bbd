#include "gqe/geometry.hpp"

#include <cmath>
#include <cstdio>

#include "gqe/error.hpp"

namespace gqe {

ConformalMetric::ConformalMetric(ScalarField phi) : phi_(std::move(phi)) {
  if (phi_.dim() < 3) throw InvalidArgument("conformal metric requires n >= 3");
}

ConformalPoint ConformalMetric::at(std::span<const double> x) const {
  FieldJet j = phi_.jet(x);
  if (!(std::abs(j.value) > kMinConformalFactor)) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", j.value);
    throw ZeroConformalFactor(std::string("conformal factor vanishes (phi = ") + buf + ")");
  }
  return ConformalPoint(std::move(j));
}

ConformalPoint::ConformalPoint(FieldJet phi)
    : n_(static_cast<int>(phi.gradient.size())), jet_(std::move(phi)) {}

SymTensor ConformalPoint::metric() const {
  return SymTensor::identity(n_, 1.0 / (phi() * phi()));
}

SymTensor ConformalPoint::inverse_metric() const {
  return SymTensor::identity(n_, phi() * phi());
}

Christoffel ConformalPoint::christoffel() const {
  Christoffel gamma(n_);
  const double inv = 1.0 / phi();
  const Vector& d = dphi();
  for (int k = 0; k < n_; ++k) {
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) {
        double v = 0.0;
        if (j == k) v += d[i];
        if (i == k) v += d[j];
        if (i == j) v -= d[k];
        gamma(k, i, j) = -v * inv;
      }
    }
  }
  return gamma;
}

SymTensor ConformalPoint::ricci() const {
  const double p = phi();
  const double n = n_;
  double diag = 0.0;
  for (int k = 0; k < n_; ++k) {
    const double q = dphi()[k] / p;
    diag += ddphi()(k, k) / p - (n - 1.0) * q * q;
  }
  SymTensor ric(n_);
  for (int i = 0; i < n_; ++i) {
    for (int j = i; j < n_; ++j) {
      ric.set(i, j, (n - 2.0) * ddphi()(i, j) / p + (i == j ? diag : 0.0));
    }
  }
  return ric;
}

double ConformalPoint::scalar_curvature() const {
  const double n = n_;
  return (n - 1.0) * (2.0 * phi() * ddphi().trace() - n * dot(dphi(), dphi()));
}

SymTensor ConformalPoint::hessian(const FieldJet& f) const {
  const double inv = 1.0 / phi();
  const double cross = dot(f.gradient, dphi()) * inv;
  SymTensor h(n_);
  for (int i = 0; i < n_; ++i) {
    for (int j = i; j < n_; ++j) {
      double v = f.hessian(i, j) + (f.gradient[i] * dphi()[j] + dphi()[i] * f.gradient[j]) * inv;
      if (i == j) v -= cross;
      h.set(i, j, v);
    }
  }
  return h;
}

Vector ConformalPoint::gradient(const FieldJet& f) const { return raise(f.gradient); }

double ConformalPoint::laplacian(const FieldJet& f) const { return trace(hessian(f)); }

Vector ConformalPoint::raise(std::span<const double> covector) const {
  const double p2 = phi() * phi();
  Vector v(covector.begin(), covector.end());
  for (double& c : v) c *= p2;
  return v;
}

double ConformalPoint::trace(const SymTensor& t) const { return phi() * phi() * t.trace(); }

double ConformalPoint::inner(const SymTensor& a, const SymTensor& b) const {
  double s = 0.0;
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) s += a(i, j) * b(i, j);
  }
  const double p2 = phi() * phi();
  return p2 * p2 * s;
}

double ConformalPoint::inner_covectors(std::span<const double> a,
                                       std::span<const double> b) const {
  return phi() * phi() * dot(a, b);
}

double ConformalPoint::norm_vector(std::span<const double> v) const {
  return norm2(v) / std::abs(phi());
}

double ConformalPoint::norm_covector(std::span<const double> w) const {
  return std::abs(phi()) * norm2(w);
}

double ConformalPoint::norm(const SymTensor& t) const {
  return phi() * phi() * t.frobenius();
}

SymTensor ConformalPoint::traceless(const SymTensor& t) const {
  // g = δ/φ², tr_g T = φ² tr T, so T̊ = T − (tr T / n) δ.
  SymTensor out = t;
  const double shift = t.trace() / n_;
  for (int i = 0; i < n_; ++i) out.add(i, i, -shift);
  return out;
}

double derived_field_step(std::span<const double> x) { return 1e-4 * (1.0 + norm2(x)); }

SymTensor metric_at(const ConformalMetric& m, std::span<const double> x) {
  return m.at(x).metric();
}

Christoffel christoffel_at(const ConformalMetric& m, std::span<const double> x) {
  return m.at(x).christoffel();
}

SymTensor ricci_at(const ConformalMetric& m, std::span<const double> x) {
  return m.at(x).ricci();
}

double scalar_curvature_at(const ConformalMetric& m, std::span<const double> x) {
  return m.at(x).scalar_curvature();
}

SymTensor hessian_g(const ConformalMetric& m, const ScalarField& f, std::span<const double> x) {
  return m.at(x).hessian(f.jet(x));
}

Vector gradient_g(const ConformalMetric& m, const ScalarField& f, std::span<const double> x) {
  return m.at(x).gradient(f.jet(x));
}

double laplacian_g(const ConformalMetric& m, const ScalarField& f, std::span<const double> x) {
  return m.at(x).laplacian(f.jet(x));
}

double norm_g(const ConformalMetric& m, const SymTensor& t, std::span<const double> x) {
  return m.at(x).norm(t);
}

double norm_g_vector(const ConformalMetric& m, std::span<const double> v,
                     std::span<const double> x) {
  return m.at(x).norm_vector(v);
}

double norm_g_covector(const ConformalMetric& m, std::span<const double> w,
                       std::span<const double> x) {
  return m.at(x).norm_covector(w);
}

double divergence_g(const ConformalMetric& m, const VectorField& field,
                    std::span<const double> x, double h) {
  const int n = m.dim();
  if (h <= 0.0) h = derived_field_step(x);
  const ConformalPoint p = m.at(x);
  const Christoffel gamma = p.christoffel();
  const Vector x0 = field(x);

  double div = 0.0;
  for (int i = 0; i < n; ++i) {
    div += partial_derivative<double>(
        [&field, i](std::span<const double> y) { return field(y)[i]; }, x, i, h);
  }
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) div += gamma(i, i, k) * x0[k];
  }
  return div;
}

Vector divergence_g(const ConformalMetric& m, const TensorField& field,
                    std::span<const double> x, double h) {
  const int n = m.dim();
  if (h <= 0.0) h = derived_field_step(x);
  const ConformalPoint p = m.at(x);
  const Christoffel gamma = p.christoffel();
  const SymTensor t0 = field(x);

  // dt[k] = ∂_k T
  std::vector<SymTensor> dt;
  dt.reserve(n);
  for (int k = 0; k < n; ++k) dt.push_back(partial_derivative<SymTensor>(field, x, k, h));

  // (div T)_j = φ² Σ_i ∇_i T_ij,  ∇_k T_ij = ∂_k T_ij − Γᵐ_ki T_mj − Γᵐ_kj T_im.
  Vector out(n, 0.0);
  for (int j = 0; j < n; ++j) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      double cov = dt[i](i, j);
      for (int mm = 0; mm < n; ++mm) {
        cov -= gamma(mm, i, i) * t0(mm, j) + gamma(mm, i, j) * t0(i, mm);
      }
      s += cov;
    }
    out[j] = p.phi() * p.phi() * s;
  }
  return out;
}

SymTensor traceless(const SymTensor& t, const SymTensor& g) {
  if (t.dim() != g.dim()) throw InvalidArgument("traceless: dimension mismatch");
  const SymTensor g_inv = inverse_spd(g);
  const double tr = trace_with(g_inv, t);
  return t - (tr / t.dim()) * g;
}

double bianchi_gap(const ConformalMetric& m, std::span<const double> x, double h) {
  const int n = m.dim();
  if (h <= 0.0) h = derived_field_step(x);
  const Vector div_ric = divergence_g(
      m, TensorField([&m](std::span<const double> y) { return ricci_at(m, y); }), x, h);
  const auto scalar = [&m](std::span<const double> y) { return scalar_curvature_at(m, y); };
  Vector gap(n);
  for (int k = 0; k < n; ++k) {
    gap[k] = div_ric[k] - 0.5 * partial_derivative<double>(scalar, x, k, h);
  }
  return m.at(x).norm_covector(gap);
}

}  // namespace gqe
