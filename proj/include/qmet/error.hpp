#pragma once

#include <stdexcept>
#include <string>

namespace qmet {

// Domain-level failures (invalid inputs, contract violations).  Parse
// failures of external files are ParseError so the CLI can map them to a
// distinct exit code.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qmet
