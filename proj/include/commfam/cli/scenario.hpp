#pragma once

#include "commfam/cli/config.hpp"
#include "commfam/cli/report.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace commfam::cli {

struct KindInfo {
  std::string kind;
  std::string summary;
  std::vector<std::pair<std::string, std::string>> params;  ///< (key, default); "" default means optional
};

const std::vector<KindInfo>& scenario_kinds();

struct Scenario {
  std::string kind;
  Config params;  ///< everything except kind and seed
  std::uint64_t seed = 0;

  /// Reads kind and seed; an unknown kind is a ConfigError. Other keys are
  /// checked by run_scenario.
  static Scenario from_config(const Config& cfg);
  static Scenario make(std::string kind, std::uint64_t seed, std::vector<std::pair<std::string, std::string>> params);
};

struct RunOptions {
  int jobs = 1;
};

/// Deterministic in (kind, params, seed) apart from duration_ms.
/// Parameter problems raise ConfigError before any trial runs; failures
/// inside a trial become fail/skipped records.
Report run_scenario(const Scenario& s, const RunOptions& opt = {});

// ---------------------------------------------------------------------------
// Acceptance suite

struct AcceptanceEntry {
  Scenario scenario;
  double limit_s = 0;  ///< wall-clock bound for this scenario; 0 = none
};

struct AcceptanceCriterion {
  int id = 0;
  std::string title;
  std::vector<AcceptanceEntry> entries;
  double total_limit_s = 0;  ///< bound on the sum over entries; 0 = none
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::size_t checks = 0;
  double seconds = 0;
  std::string detail;  ///< first failure, or a summary on pass
};

const std::vector<AcceptanceCriterion>& acceptance_suite();
CriterionResult run_criterion(const AcceptanceCriterion& c, const RunOptions& opt, std::ostream* log = nullptr);
/// Runs every criterion and prints one line per criterion to `out`.
std::vector<CriterionResult> verify_all(const RunOptions& opt, std::ostream& out);

}  // namespace commfam::cli
