#include "commfam/cli/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace commfam::cli {

namespace {

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

std::string unquote(const std::string& v) {
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"') return v.substr(1, v.size() - 2);
  return v;
}

[[noreturn]] void bad_field(const std::string& key, const std::string& expected, const std::string& value) {
  throw ConfigError("config field '" + key + "': expected " + expected + ", got '" + value + "'");
}

}  // namespace

Config Config::parse(std::string_view text) {
  Config cfg;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    // Comments: '#' outside quotes.
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') quoted = !quoted;
      if (line[i] == '#' && !quoted) {
        line.resize(i);
        break;
      }
    }
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected 'key = value', got '" + t + "'");
    const std::string key = trim(std::string_view(t).substr(0, eq));
    const std::string value = trim(std::string_view(t).substr(eq + 1));
    if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
    for (char c : key)
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-')
        throw ConfigError("config line " + std::to_string(lineno) + ": invalid key '" + key + "'");
    if (cfg.has(key)) throw ConfigError("config field '" + key + "': given more than once");
    cfg.values_[key] = unquote(value);
  }
  return cfg;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

const std::string& Config::raw(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("config field '" + key + "': missing");
  return it->second;
}

std::string Config::get_string(const std::string& key) const { return raw(key); }

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  return has(key) ? raw(key) : fallback;
}

long Config::get_int(const std::string& key) const {
  const std::string& v = raw(key);
  long out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) bad_field(key, "an integer", v);
  return out;
}

long Config::get_int(const std::string& key, long fallback) const { return has(key) ? get_int(key) : fallback; }

std::uint64_t Config::get_u64(const std::string& key) const {
  const std::string& v = raw(key);
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) bad_field(key, "a non-negative 64-bit integer", v);
  return out;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const std::string& v = raw(key);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  bad_field(key, "true or false", v);
}

std::vector<Rat> Config::get_rat_list(const std::string& key) const {
  const std::string v = trim(raw(key));
  if (v.size() < 2 || v.front() != '[' || v.back() != ']') bad_field(key, "a list like [0, 1]", v);
  std::vector<Rat> out;
  const std::string body = trim(std::string_view(v).substr(1, v.size() - 2));
  if (body.empty()) return out;
  std::istringstream items(body);
  std::string item;
  while (std::getline(items, item, ',')) {
    try {
      out.push_back(Rat::parse(item));
    } catch (const std::exception&) {
      bad_field(key, "a list of rationals", v);
    }
  }
  return out;
}

long Config::get_int_in(const std::string& key, long fallback, long lo, long hi) const {
  const long v = get_int(key, fallback);
  if (v < lo || v > hi)
    throw ConfigError("config field '" + key + "': must be in [" + std::to_string(lo) + ", " + std::to_string(hi) +
                      "], got " + std::to_string(v));
  return v;
}

}  // namespace commfam::cli
