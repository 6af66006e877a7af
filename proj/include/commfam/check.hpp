#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace commfam {

/// Outcome of one verification routine: how many sub-checks ran and which
/// of them failed, each with a serialized witness.
class CheckReport {
public:
  struct Failure {
    std::string what;
    std::string witness;
  };

  explicit CheckReport(std::string name = {}) : name_(std::move(name)) {}

  void record(bool ok, const std::string& what, const std::string& witness = {}) {
    ++count_;
    if (!ok) failures_.push_back({what, witness});
  }
  /// Records a sub-check whose witness is the first nonzero entry of a
  /// residual ("" meaning the residual vanished).
  void record_zero(const std::string& what, const std::string& first_nonzero_entry) {
    record(first_nonzero_entry.empty(), what, first_nonzero_entry);
  }
  void merge(const CheckReport& other) {
    count_ += other.count_;
    failures_.insert(failures_.end(), other.failures_.begin(), other.failures_.end());
  }

  const std::string& name() const { return name_; }
  std::size_t count() const { return count_; }
  const std::vector<Failure>& failures() const { return failures_; }
  bool passed() const { return failures_.empty(); }
  /// "what: witness" of the first failure, or "".
  std::string first_witness() const {
    if (failures_.empty()) return {};
    return failures_.front().what + ": " + failures_.front().witness;
  }

private:
  std::string name_;
  std::size_t count_ = 0;
  std::vector<Failure> failures_;
};

}  // namespace commfam
