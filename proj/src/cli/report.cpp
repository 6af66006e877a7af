#include "commfam/cli/report.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace commfam::cli {

using nlohmann::json;

std::string to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skipped: return "skipped";
  }
  return "fail";
}

Status status_from_string(const std::string& s) {
  if (s == "pass") return Status::pass;
  if (s == "fail") return Status::fail;
  if (s == "skipped") return Status::skipped;
  throw IoError("report: unknown status '" + s + "'");
}

bool Report::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.status == Status::pass; });
}

std::string report_to_text(const Report& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    json j = {{"name", c.name}, {"anchor", c.anchor}, {"status", to_string(c.status)}};
    if (!c.witness.empty()) j["witness"] = c.witness;
    if (!c.note.empty()) j["note"] = c.note;
    checks.push_back(std::move(j));
  }
  const json doc = {{"scenario", {{"kind", r.kind}, {"params", r.params}}},
                    {"seed", r.seed},
                    {"checks", std::move(checks)},
                    {"duration_ms", r.duration_ms},
                    {"version", r.version}};
  return doc.dump(2) + "\n";
}

Report report_from_text(const std::string& text) {
  try {
    const json doc = json::parse(text);
    Report r;
    r.kind = doc.at("scenario").at("kind").get<std::string>();
    r.params = doc.at("scenario").at("params").get<std::map<std::string, std::string>>();
    r.seed = doc.at("seed").get<std::uint64_t>();
    r.duration_ms = doc.at("duration_ms").get<std::int64_t>();
    r.version = doc.at("version").get<std::string>();
    for (const auto& j : doc.at("checks")) {
      CheckRecord c;
      c.name = j.at("name").get<std::string>();
      c.anchor = j.at("anchor").get<std::string>();
      c.status = status_from_string(j.at("status").get<std::string>());
      c.witness = j.value("witness", std::string());
      c.note = j.value("note", std::string());
      r.checks.push_back(std::move(c));
    }
    return r;
  } catch (const json::exception& e) {
    throw IoError(std::string("report: malformed document: ") + e.what());
  }
}

void emit_report(const Report& r, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open report file '" + path + "' for writing");
  out << report_to_text(r);
  out.flush();
  if (!out) throw IoError("failed writing report file '" + path + "'");
}

Report load_report(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open report file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return report_from_text(buf.str());
}

}  // namespace commfam::cli
