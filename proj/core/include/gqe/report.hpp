#pragma once

#include <deque>
#include <string>
#include <utility>
#include <vector>

namespace gqe {

/// Running aggregate of one named check over sample points.
class CheckResult {
 public:
  CheckResult(std::string name, double tol, bool asserted = true)
      : name_(std::move(name)), tol_(tol), asserted_(asserted) {}

  /// Records a gap. A non-finite gap fails the check.
  void add(double gap);
  void skip(long count = 1) { skipped_ += count; }
  /// Marks the check failed with a reason (e.g. an evaluation error).
  void fail(std::string reason);
  /// Folds another aggregate of the same check into this one.
  void merge(const CheckResult& other);

  const std::string& name() const noexcept { return name_; }
  double tol() const noexcept { return tol_; }
  bool asserted() const noexcept { return asserted_; }
  double max_gap() const noexcept { return max_; }
  double mean_gap() const noexcept { return evaluated_ ? sum_ / evaluated_ : 0.0; }
  long points_evaluated() const noexcept { return evaluated_; }
  long points_skipped() const noexcept { return skipped_; }
  const std::string& failure() const noexcept { return failure_; }
  /// Unasserted checks always pass; asserted ones need at least one point,
  /// no failure and max_gap ≤ tol.
  bool pass() const;

 private:
  std::string name_;
  double tol_;
  bool asserted_;
  double max_ = 0.0;
  double sum_ = 0.0;
  long evaluated_ = 0;
  long skipped_ = 0;
  bool non_finite_ = false;
  std::string failure_;
};

class VerificationReport {
 public:
  CheckResult& add_check(std::string name, double tol, bool asserted = true);
  CheckResult& check(const std::string& name);
  const CheckResult* find(const std::string& name) const;
  void set_value(const std::string& key, double value);
  /// Throws InvalidArgument if absent.
  double value(const std::string& key) const;

  /// References returned by add_check/check stay valid as checks are added.
  const std::deque<CheckResult>& checks() const noexcept { return checks_; }
  const std::vector<std::pair<std::string, double>>& values() const noexcept { return values_; }
  void append(const VerificationReport& other, const std::string& prefix = {});
  bool overall_pass() const;

 private:
  std::deque<CheckResult> checks_;
  std::vector<std::pair<std::string, double>> values_;
};

}  // namespace gqe
