#pragma once

#include <stdexcept>
#include <string>

namespace primtop {

// Malformed input files / JSON. CLI maps this to exit code 2.
class parse_error : public std::runtime_error {
 public:
  explicit parse_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Violated preconditions and validation failures on otherwise well-formed
// data. Carries a machine-readable kind ("NotRowFinite", "HasSources", ...).
// CLI maps this to exit code 1.
class domain_error : public std::runtime_error {
 public:
  domain_error(std::string kind, const std::string& msg)
      : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

}  // namespace primtop
