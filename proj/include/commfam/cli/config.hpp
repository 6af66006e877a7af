#pragma once

#include "commfam/exact/rat.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace commfam::cli {

/// Malformed config text or a bad/missing field; the message names the field.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Flat "key = value" settings. '#' starts a comment; lists are written
/// "[a, b, c]"; string values may be double-quoted.
class Config {
public:
  Config() = default;
  static Config parse(std::string_view text);
  static Config load(const std::string& path);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  void set(const std::string& key, std::string value) { values_[key] = std::move(value); }
  void erase(const std::string& key) { values_.erase(key); }
  const std::map<std::string, std::string>& values() const { return values_; }

  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  long get_int(const std::string& key) const;
  long get_int(const std::string& key, long fallback) const;
  std::uint64_t get_u64(const std::string& key) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<Rat> get_rat_list(const std::string& key) const;

  /// get_int with lo <= value <= hi enforced.
  long get_int_in(const std::string& key, long fallback, long lo, long hi) const;

private:
  std::map<std::string, std::string> values_;
  const std::string& raw(const std::string& key) const;
};

}  // namespace commfam::cli
