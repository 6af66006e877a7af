#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace commfam::cli {

/// Report file could not be written or read back.
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class Status { pass, fail, skipped };

std::string to_string(Status s);
Status status_from_string(const std::string& s);

struct CheckRecord {
  std::string name;
  std::string anchor;  ///< short formula the check verifies
  Status status = Status::pass;
  std::string witness;  ///< serialized counterexample; empty on pass
  std::string note;     ///< e.g. resampled draws; empty if none

  friend bool operator==(const CheckRecord&, const CheckRecord&) = default;
};

struct Report {
  std::string kind;
  std::map<std::string, std::string> params;  ///< effective parameters, defaults filled in
  std::uint64_t seed = 0;
  std::vector<CheckRecord> checks;
  std::int64_t duration_ms = 0;
  std::string version;

  bool passed() const;
  friend bool operator==(const Report&, const Report&) = default;
};

/// JSON text:
/// {"scenario": {"kind": ..., "params": {...}}, "seed": ..., "checks": [{"name",
///  "anchor", "status", "witness"?, "note"?}], "duration_ms": ..., "version": ...}
std::string report_to_text(const Report& r);
/// Throws IoError on malformed text.
Report report_from_text(const std::string& text);

void emit_report(const Report& r, const std::string& path);
Report load_report(const std::string& path);

}  // namespace commfam::cli
