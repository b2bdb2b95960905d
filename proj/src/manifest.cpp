#include "bohrlab/manifest.hpp"

#include <openssl/evp.h>
#include <openssl/opensslv.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "bohrlab/error.hpp"

namespace bohrlab {

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("DigestFailure", "sha256 failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

std::string file_sha256(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return {};
  std::ostringstream ss;
  ss << in.rdbuf();
  return sha256_hex(ss.str());
}

void write_atomic(const std::string& path, std::string_view content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("IoError", "cannot open " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error("IoError", "short write to " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error("IoError", "rename to " + path + " failed: " + ec.message());
  }
}

std::string RunManifest::to_json_line() const {
  nlohmann::ordered_json j;
  std::string command;
  for (const auto& a : argv) {
    if (!command.empty()) command += ' ';
    command += a;
  }
  j["command"] = command;
  j["argv"] = argv;
  j["seed"] = seed;
  j["seed_given"] = seed_given;
  j["config_hash"] = sha256_hex(config_json);
  j["config"] = nlohmann::ordered_json::parse(config_json.empty() ? "{}" : config_json);
  j["versions"] = {{"bohrlab", "0.1.0"}, {"compiler", __VERSION__}, {"openssl", OPENSSL_VERSION_TEXT}};
  j["inputs"] = inputs;
  j["outputs"] = outputs;
  j["wall_time_s"] = wall_seconds;
  j["exit_code"] = exit_code;
  if (!error.empty()) j["error"] = error;
  return j.dump() + "\n";
}

void append_manifest(const std::string& path, const RunManifest& m) {
  const std::string line = m.to_json_line();
  std::FILE* f = std::fopen(path.c_str(), "ab");
  if (!f) throw Error("IoError", "cannot open manifest " + path);
  const bool ok = std::fwrite(line.data(), 1, line.size(), f) == line.size();
  std::fclose(f);
  if (!ok) throw Error("IoError", "short write to manifest " + path);
}

}  // namespace bohrlab
