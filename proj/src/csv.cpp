#include "bohrlab/csv.hpp"

#include <charconv>
#include <cmath>

namespace bohrlab::csv {

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string num(long long v) { return std::to_string(v); }
std::string num(unsigned long long v) { return std::to_string(v); }

std::string field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string row(std::initializer_list<std::string_view> fields) {
  std::string out;
  bool first = true;
  for (const auto f : fields) {
    if (!first) out += ',';
    out += field(f);
    first = false;
  }
  out += "\r\n";
  return out;
}

}  // namespace bohrlab::csv
