#pragma once

#include <stdexcept>
#include <string>

namespace qbell {

// Input fails numeric validation (bad distribution, parameter out of range).
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// API misuse: mismatched scenario/role combinations, malformed calls.
class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qbell
