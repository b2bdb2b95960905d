#pragma once

#include <initializer_list>
#include <string>
#include <string_view>

namespace bohrlab::csv {

/// Shortest round-trip decimal, independent of locale.
std::string num(double v);
std::string num(long long v);
std::string num(unsigned long long v);
inline std::string num(int v) { return num(static_cast<long long>(v)); }
inline std::string num(long v) { return num(static_cast<long long>(v)); }
inline std::string num(unsigned long v) { return num(static_cast<unsigned long long>(v)); }

/// RFC 4180 quoting when the field contains a comma, quote or line break.
std::string field(std::string_view s);

/// Fields must already be formatted; terminates the record with CRLF.
std::string row(std::initializer_list<std::string_view> fields);

}  // namespace bohrlab::csv
