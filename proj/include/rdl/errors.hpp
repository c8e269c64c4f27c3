#pragma once

#include <stdexcept>
#include <string>

namespace rdl {

// Bad user-supplied configuration: malformed digit system, out-of-range
// parameter, unsupported combination. Maps to CLI exit code 1.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A requested computation exceeds a hard resource cap (enumeration size,
// matrix dimension, integration budget). Maps to CLI exit code 1.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// An iterative method failed to reach its tolerance within its iteration cap.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rdl
