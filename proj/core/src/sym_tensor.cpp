#include "gqe/sym_tensor.hpp"

#include <cmath>

#include "gqe/error.hpp"

namespace gqe {

SymTensor SymTensor::identity(int n, double scale) {
  SymTensor t(n);
  for (int i = 0; i < n; ++i) t.set(i, i, scale);
  return t;
}

SymTensor SymTensor::symmetrized(int n, std::span<const double> row_major) {
  if (row_major.size() != static_cast<std::size_t>(n) * n) {
    throw InvalidArgument("symmetrized: expected n*n components");
  }
  SymTensor t(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      t.set(i, j, 0.5 * (row_major[i * n + j] + row_major[j * n + i]));
    }
  }
  return t;
}

SymTensor SymTensor::outer(std::span<const double> a) {
  const int n = static_cast<int>(a.size());
  SymTensor t(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) t.set(i, j, a[i] * a[j]);
  }
  return t;
}

SymTensor SymTensor::sym_outer(std::span<const double> a, std::span<const double> b) {
  const int n = static_cast<int>(a.size());
  if (b.size() != a.size()) throw InvalidArgument("sym_outer: dimension mismatch");
  SymTensor t(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) t.set(i, j, 0.5 * (a[i] * b[j] + b[i] * a[j]));
  }
  return t;
}

SymTensor& SymTensor::operator+=(const SymTensor& o) {
  if (o.n_ != n_) throw InvalidArgument("SymTensor: dimension mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

SymTensor& SymTensor::operator-=(const SymTensor& o) {
  if (o.n_ != n_) throw InvalidArgument("SymTensor: dimension mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

SymTensor& SymTensor::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

double SymTensor::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double SymTensor::frobenius() const {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return std::sqrt(s);
}

double SymTensor::trace() const {
  double s = 0.0;
  for (int i = 0; i < n_; ++i) s += (*this)(i, i);
  return s;
}

SymTensor operator+(SymTensor a, const SymTensor& b) { return a += b; }
SymTensor operator-(SymTensor a, const SymTensor& b) { return a -= b; }
SymTensor operator*(double s, SymTensor a) { return a *= s; }
SymTensor operator*(SymTensor a, double s) { return a *= s; }

double Christoffel::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

namespace {

// Lower-triangular Cholesky factor, row-major; returns false if not PD.
bool cholesky(const SymTensor& g, std::vector<double>& l) {
  const int n = g.dim();
  l.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int j = 0; j < n; ++j) {
    double d = g(j, j);
    for (int k = 0; k < j; ++k) d -= l[j * n + k] * l[j * n + k];
    if (!(d > 0.0) || !std::isfinite(d)) return false;
    const double ljj = std::sqrt(d);
    l[j * n + j] = ljj;
    for (int i = j + 1; i < n; ++i) {
      double s = g(i, j);
      for (int k = 0; k < j; ++k) s -= l[i * n + k] * l[j * n + k];
      l[i * n + j] = s / ljj;
    }
  }
  return true;
}

}  // namespace

bool is_positive_definite(const SymTensor& g) {
  std::vector<double> l;
  return cholesky(g, l);
}

SymTensor inverse_spd(const SymTensor& g) {
  const int n = g.dim();
  std::vector<double> l;
  if (!cholesky(g, l)) throw DomainError("metric is not positive definite");
  // Solve L Lᵀ X = I column by column.
  std::vector<double> inv(static_cast<std::size_t>(n) * n, 0.0);
  std::vector<double> y(n);
  for (int c = 0; c < n; ++c) {
    for (int i = 0; i < n; ++i) {
      double s = (i == c) ? 1.0 : 0.0;
      for (int k = 0; k < i; ++k) s -= l[i * n + k] * y[k];
      y[i] = s / l[i * n + i];
    }
    for (int i = n - 1; i >= 0; --i) {
      double s = y[i];
      for (int k = i + 1; k < n; ++k) s -= l[k * n + i] * inv[k * n + c];
      inv[i * n + c] = s / l[i * n + i];
    }
  }
  return SymTensor::symmetrized(n, inv);
}

double trace_with(const SymTensor& g_inv, const SymTensor& t) {
  const int n = t.dim();
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) s += g_inv(i, j) * t(i, j);
  }
  return s;
}

double inner_with(const SymTensor& g_inv, const SymTensor& a, const SymTensor& b) {
  const int n = a.dim();
  // (g⁻¹ A g⁻¹)^{kl} B_kl
  std::vector<double> ga(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int l = 0; l < n; ++l) {
      double s = 0.0;
      for (int j = 0; j < n; ++j) s += a(i, j) * g_inv(j, l);
      ga[i * n + l] = s;
    }
  }
  double total = 0.0;
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += ga[i * n + l] * g_inv(i, k);
      total += s * b(k, l);
    }
  }
  return total;
}

Vector contract(const SymTensor& a, std::span<const double> v) {
  const int n = a.dim();
  Vector out(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += a(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

}  // namespace gqe
