#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace bohrlab {

std::string sha256_hex(std::string_view data);
/// Digest of a file's bytes; empty when it cannot be read.
std::string file_sha256(const std::string& path);

/// Writes to a sibling temp file and renames it over `path`.
void write_atomic(const std::string& path, std::string_view content);

struct RunManifest {
  std::vector<std::string> argv;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string config_json;           // canonical dump of the parsed options
  std::map<std::string, std::string> inputs;   // path -> sha256
  std::map<std::string, std::string> outputs;  // path -> sha256
  double wall_seconds = 0.0;
  int exit_code = 0;
  std::string error;

  std::string to_json_line() const;
};

/// Appends one JSON line; the record is written with a single call so
/// concurrent runs do not interleave lines.
void append_manifest(const std::string& path, const RunManifest& m);

}  // namespace bohrlab
