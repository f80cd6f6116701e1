#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fsqca {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed or inconsistent input data (files, matrices, memberships).
class DataError : public Error {
public:
  explicit DataError(const std::string& what) : Error(what) {}
};

/// Bad configuration: unknown ids, unparsable documents, invalid thresholds.
class ConfigError : public Error {
public:
  explicit ConfigError(const std::string& what) : Error(what) {}
};

/// A violated internal invariant. Seeing one of these is a bug.
class InternalError : public Error {
public:
  explicit InternalError(const std::string& what) : Error(what) {}
};

enum class Severity { warning, error };

/// Non-fatal finding attached to a location in the input.
struct Diagnostic {
  Severity severity;
  std::string location; // e.g. "row 12, column SENS"
  std::string message;

  bool operator==(const Diagnostic&) const = default;
};

using Diagnostics = std::vector<Diagnostic>;

inline bool has_errors(const Diagnostics& diags) {
  for (const auto& d : diags) {
    if (d.severity == Severity::error) return true;
  }
  return false;
}

} // namespace fsqca
