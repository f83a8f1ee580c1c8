#include "waf/journal.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>

#include "waf/errors.hpp"

namespace waf {

nlohmann::json RunRecord::to_json() const {
  nlohmann::json j;
  j["command"] = command;
  j["input_hashes"] = input_hashes;
  j["parameters"] = parameters.is_null() ? nlohmann::json::object() : parameters;
  j["outputs"] = outputs.is_null() ? nlohmann::json::object() : outputs;
  j["timestamp"] = timestamp;
  j["tool_version"] = tool_version;
  j["wall_ms"] = wall_ms;
  return j;
}

RunRecord RunRecord::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ValidationError("journal record: expected an object");
  RunRecord r;
  r.command = j.value("command", std::string{});
  if (j.contains("input_hashes")) {
    if (!j.at("input_hashes").is_array())
      throw ValidationError("journal record: input_hashes must be an array");
    for (const auto& h : j.at("input_hashes"))
      r.input_hashes.push_back(h.get<std::string>());
  }
  r.parameters = j.value("parameters", nlohmann::json::object());
  r.outputs = j.value("outputs", nlohmann::json::object());
  r.timestamp = j.value("timestamp", std::string{});
  r.tool_version = j.value("tool_version", std::string{});
  r.wall_ms = j.value("wall_ms", 0.0);
  return r;
}

std::string resolve_journal_path(const std::string& flag_value,
                                 const std::string& out_dir) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("WAFSPACE_JOURNAL"); env && *env)
    return env;
  if (!out_dir.empty()) {
    std::string dir = out_dir;
    if (dir.back() != '/') dir += '/';
    return dir + "journal.jsonl";
  }
  return "journal.jsonl";
}

void append_record(const std::string& path, const RunRecord& record) {
  std::ofstream out(path, std::ios::app);
  if (!out) throw ValidationError("cannot open journal '" + path + "' for append");
  out << record.to_json().dump() << "\n";
  if (!out) throw ValidationError("failed appending to journal '" + path + "'");
}

std::vector<RunRecord> read_journal(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open journal '" + path + "' for reading");
  std::vector<RunRecord> records;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ValidationError("journal '" + path + "' line " +
                            std::to_string(lineno) + ": " + e.what());
    }
    records.push_back(RunRecord::from_json(j));
  }
  return records;
}

std::string iso8601_utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      now.time_since_epoch())
                      .count() %
                  1000;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ",
                tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday, tm.tm_hour,
                tm.tm_min, tm.tm_sec, static_cast<int>(ms));
  return buf;
}

}  // namespace waf
