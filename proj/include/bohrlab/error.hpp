#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace bohrlab {

/// Domain error tagged with a stable name (e.g. "ModulusMismatch") that the
/// CLI reports verbatim.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& message)
      : std::runtime_error(name + ": " + message), name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

}  // namespace bohrlab
