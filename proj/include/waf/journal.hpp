#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace waf {

// One journal line per CLI operation. The outputs block is a pure function of
// command + inputs + parameters; timestamp and wall time live outside it so
// reruns can be compared byte for byte.
struct RunRecord {
  std::string command;
  std::vector<std::string> input_hashes;
  nlohmann::json parameters;  // object
  nlohmann::json outputs;     // object
  std::string timestamp;      // ISO 8601 UTC
  std::string tool_version;
  double wall_ms = 0.0;

  nlohmann::json to_json() const;
  static RunRecord from_json(const nlohmann::json& j);
};

// Journal location: explicit flag > WAFSPACE_JOURNAL env > out_dir, falling
// back to ./journal.jsonl.
std::string resolve_journal_path(const std::string& flag_value,
                                 const std::string& out_dir);

void append_record(const std::string& path, const RunRecord& record);
std::vector<RunRecord> read_journal(const std::string& path);

std::string iso8601_utc_now();

}  // namespace waf
