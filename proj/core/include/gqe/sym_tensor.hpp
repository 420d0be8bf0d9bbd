#pragma once

#include <span>
#include <vector>

namespace gqe {

using Vector = std::vector<double>;

/// Dense symmetric n×n matrix. Every write goes to (i,j) and (j,i), so
/// symmetry is exact.
class SymTensor {
 public:
  SymTensor() = default;
  explicit SymTensor(int n) : n_(n), data_(static_cast<std::size_t>(n) * n, 0.0) {}

  static SymTensor identity(int n, double scale = 1.0);
  /// Symmetrizes a row-major n×n array: (A + Aᵀ)/2.
  static SymTensor symmetrized(int n, std::span<const double> row_major);
  /// a⊗a.
  static SymTensor outer(std::span<const double> a);
  /// (a⊗b + b⊗a)/2.
  static SymTensor sym_outer(std::span<const double> a, std::span<const double> b);

  int dim() const noexcept { return n_; }
  double operator()(int i, int j) const { return data_[index(i, j)]; }
  void set(int i, int j, double v) {
    data_[index(i, j)] = v;
    data_[index(j, i)] = v;
  }
  void add(int i, int j, double v) {
    data_[index(i, j)] += v;
    if (i != j) data_[index(j, i)] += v;
  }

  SymTensor& operator+=(const SymTensor& o);
  SymTensor& operator-=(const SymTensor& o);
  SymTensor& operator*=(double s);

  double max_abs() const;
  double frobenius() const;
  double trace() const;

 private:
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * n_ + j; }

  int n_ = 0;
  std::vector<double> data_;
};

SymTensor operator+(SymTensor a, const SymTensor& b);
SymTensor operator-(SymTensor a, const SymTensor& b);
SymTensor operator*(double s, SymTensor a);
SymTensor operator*(SymTensor a, double s);

/// Γᵏᵢⱼ stored as (k, i, j).
class Christoffel {
 public:
  Christoffel() = default;
  explicit Christoffel(int n)
      : n_(n), data_(static_cast<std::size_t>(n) * n * n, 0.0) {}

  int dim() const noexcept { return n_; }
  double operator()(int k, int i, int j) const { return data_[index(k, i, j)]; }
  double& operator()(int k, int i, int j) { return data_[index(k, i, j)]; }
  double max_abs() const;

 private:
  std::size_t index(int k, int i, int j) const {
    return (static_cast<std::size_t>(k) * n_ + i) * n_ + j;
  }
  int n_ = 0;
  std::vector<double> data_;
};

/// Inverse of a symmetric positive-definite matrix via Cholesky. Throws
/// DomainError if `g` is not positive definite.
SymTensor inverse_spd(const SymTensor& g);
bool is_positive_definite(const SymTensor& g);

/// g^{ij} T_ij given the inverse metric.
double trace_with(const SymTensor& g_inv, const SymTensor& t);
/// g^{ik} g^{jl} A_ij B_kl given the inverse metric.
double inner_with(const SymTensor& g_inv, const SymTensor& a, const SymTensor& b);
/// A_ij v^j.
Vector contract(const SymTensor& a, std::span<const double> v);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

}  // namespace gqe
