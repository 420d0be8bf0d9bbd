#include "gqe/report.hpp"

#include <algorithm>
#include <cmath>

#include "gqe/error.hpp"

namespace gqe {

void CheckResult::add(double gap) {
  ++evaluated_;
  if (!std::isfinite(gap)) {
    non_finite_ = true;
    if (failure_.empty()) failure_ = "non-finite gap";
    return;
  }
  max_ = std::max(max_, gap);
  sum_ += gap;
}

void CheckResult::fail(std::string reason) {
  if (failure_.empty()) failure_ = std::move(reason);
  non_finite_ = true;
}

void CheckResult::merge(const CheckResult& other) {
  max_ = std::max(max_, other.max_);
  sum_ += other.sum_;
  evaluated_ += other.evaluated_;
  skipped_ += other.skipped_;
  if (other.non_finite_) {
    non_finite_ = true;
    if (failure_.empty()) failure_ = other.failure_;
  }
}

bool CheckResult::pass() const {
  if (!asserted_) return true;
  return evaluated_ > 0 && !non_finite_ && max_ <= tol_;
}

CheckResult& VerificationReport::add_check(std::string name, double tol, bool asserted) {
  checks_.emplace_back(std::move(name), tol, asserted);
  return checks_.back();
}

CheckResult& VerificationReport::check(const std::string& name) {
  for (auto& c : checks_) {
    if (c.name() == name) return c;
  }
  throw InvalidArgument("no check named '" + name + "'");
}

const CheckResult* VerificationReport::find(const std::string& name) const {
  for (const auto& c : checks_) {
    if (c.name() == name) return &c;
  }
  return nullptr;
}

void VerificationReport::set_value(const std::string& key, double value) {
  for (auto& [k, v] : values_) {
    if (k == key) {
      v = value;
      return;
    }
  }
  values_.emplace_back(key, value);
}

double VerificationReport::value(const std::string& key) const {
  for (const auto& [k, v] : values_) {
    if (k == key) return v;
  }
  throw InvalidArgument("no value named '" + key + "'");
}

void VerificationReport::append(const VerificationReport& other, const std::string& prefix) {
  for (const auto& c : other.checks_) {
    checks_.push_back(c);
    if (!prefix.empty()) {
      CheckResult renamed(prefix + c.name(), c.tol(), c.asserted());
      renamed.merge(c);
      checks_.back() = renamed;
    }
  }
  for (const auto& [k, v] : other.values_) set_value(prefix + k, v);
}

bool VerificationReport::overall_pass() const {
  return std::all_of(checks_.begin(), checks_.end(), [](const CheckResult& c) { return c.pass(); });
}

}  // namespace gqe
