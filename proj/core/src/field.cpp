#include "gqe/field.hpp"

#include <cmath>
#include <cstdio>

#include "gqe/error.hpp"

namespace gqe {

namespace {

void check_point(int n, std::span<const double> x) {
  if (static_cast<int>(x.size()) != n) {
    throw InvalidArgument("point has dimension " + std::to_string(x.size()) +
                          ", field expects " + std::to_string(n));
  }
}

FieldJet explicit_jet(const Explicit& e, std::span<const double> x) {
  if (e.jet) return e.jet(x);
  const int n = static_cast<int>(x.size());
  const double h = 1e-5 * (1.0 + norm2(x));
  Vector y(x.begin(), x.end());
  FieldJet out{e.value(x), Vector(n, 0.0), SymTensor(n)};
  auto at = [&](int i, double di, int j, double dj) {
    y[i] += di;
    y[j] += dj;
    const double v = e.value(y);
    y[i] -= di;
    y[j] -= dj;
    return v;
  };
  for (int i = 0; i < n; ++i) {
    const double fp = at(i, h, i, 0.0);
    const double fm = at(i, -h, i, 0.0);
    out.gradient[i] = (fp - fm) / (2.0 * h);
    out.hessian.set(i, i, (fp - 2.0 * out.value + fm) / (h * h));
    for (int j = i + 1; j < n; ++j) {
      const double fpp = at(i, h, j, h);
      const double fpm = at(i, h, j, -h);
      const double fmp = at(i, -h, j, h);
      const double fmm = at(i, -h, j, -h);
      out.hessian.set(i, j, (fpp - fpm - fmp + fmm) / (4.0 * h * h));
    }
  }
  return out;
}

}  // namespace

FieldJet compose(const Jet& outer, const FieldJet& inner) {
  const int n = static_cast<int>(inner.gradient.size());
  FieldJet out{outer.value, Vector(n, 0.0), SymTensor(n)};
  for (int i = 0; i < n; ++i) out.gradient[i] = outer.d1 * inner.gradient[i];
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      out.hessian.set(i, j, outer.d2 * inner.gradient[i] * inner.gradient[j] +
                                outer.d1 * inner.hessian(i, j));
    }
  }
  return out;
}

ScalarField::ScalarField(int n, SymmetryKind kind, std::optional<Profile1D> profile,
                         std::string label)
    : n_(n), kind_(std::move(kind)), profile_(std::move(profile)), label_(std::move(label)) {
  if (n_ < 1) throw InvalidArgument("field dimension must be positive");
}

ScalarField ScalarField::radial(Profile1D profile, int n) {
  std::string label = "radial[" + profile.label() + "]";
  return ScalarField(n, Radial{}, std::move(profile), std::move(label));
}

ScalarField ScalarField::translation(Profile1D profile, Vector alpha) {
  const Translation t{std::move(alpha)};
  if (!(t.a() > 0.0)) {
    throw DegenerateInput("translation direction must satisfy a = sum(alpha_k^2) > 0");
  }
  const int n = static_cast<int>(t.alpha.size());
  std::string label = "translation[" + profile.label() + "]";
  return ScalarField(n, t, std::move(profile), std::move(label));
}

ScalarField ScalarField::explicit_field(std::function<double(std::span<const double>)> fn,
                                        int n, std::string label) {
  if (!fn) throw InvalidArgument("explicit field requires a callable");
  return ScalarField(n, Explicit{std::move(fn), {}}, std::nullopt, std::move(label));
}

ScalarField ScalarField::explicit_jet_field(std::function<FieldJet(std::span<const double>)> jet,
                                            int n, std::string label) {
  if (!jet) throw InvalidArgument("explicit field requires a callable");
  auto value = [jet](std::span<const double> x) { return jet(x).value; };
  return ScalarField(n, Explicit{std::move(value), std::move(jet)}, std::nullopt,
                     std::move(label));
}

ScalarField ScalarField::constant(double c, int n) {
  return radial(Profile1D::constant(c), n);
}

const Profile1D& ScalarField::profile() const {
  if (!profile_) throw InvalidArgument("explicit field '" + label_ + "' has no profile");
  return *profile_;
}

double ScalarField::argument(std::span<const double> x) const {
  check_point(n_, x);
  if (is_radial()) return dot(x, x);
  if (const auto* t = std::get_if<Translation>(&kind_)) return dot(t->alpha, x);
  throw InvalidArgument("explicit field '" + label_ + "' has no symmetry variable");
}

FieldJet ScalarField::jet(std::span<const double> x) const {
  check_point(n_, x);
  if (const auto* e = std::get_if<Explicit>(&kind_)) return explicit_jet(*e, x);

  const Jet p = profile_->jet(argument(x));
  FieldJet out{p.value, Vector(n_, 0.0), SymTensor(n_)};
  if (is_radial()) {
    for (int i = 0; i < n_; ++i) out.gradient[i] = 2.0 * x[i] * p.d1;
    for (int i = 0; i < n_; ++i) {
      for (int j = i; j < n_; ++j) {
        const double diag = (i == j) ? 2.0 * p.d1 : 0.0;
        out.hessian.set(i, j, diag + 4.0 * x[i] * x[j] * p.d2);
      }
    }
  } else {
    const auto& alpha = std::get<Translation>(kind_).alpha;
    for (int i = 0; i < n_; ++i) out.gradient[i] = alpha[i] * p.d1;
    for (int i = 0; i < n_; ++i) {
      for (int j = i; j < n_; ++j) out.hessian.set(i, j, alpha[i] * alpha[j] * p.d2);
    }
  }
  return out;
}

double ScalarField::value(std::span<const double> x) const {
  check_point(n_, x);
  if (const auto* e = std::get_if<Explicit>(&kind_)) return e->value(x);
  return profile_->value(argument(x));
}

FieldJet field_jet(const ScalarField& field, std::span<const double> x) {
  return field.jet(x);
}

}  // namespace gqe
