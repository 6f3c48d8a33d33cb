#pragma once

#include <stdexcept>
#include <string>

namespace wearopt {

// Exit codes used by the CLI. Library exceptions map onto these so that
// scripted pipelines can gate on the failure class.
enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 2,
  kExitStructure = 3,
  kExitRuntimeCap = 4,
};

/// Bad input data or configuration (parse errors, invariant violations
/// detected at construction).
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Input file could not be parsed; carries a 1-based line number.
struct ParseError : ValidationError {
  ParseError(const std::string& path, int line, const std::string& what)
      : ValidationError(path + ":" + std::to_string(line) + ": " + what),
        line_number(line) {}
  int line_number;
};

/// A failure history lacks events for one of the parts, so per-part
/// statistics are undefined.
struct DegenerateHistory : ValidationError {
  using ValidationError::ValidationError;
};

/// A simulation with a target event count hit its safety cap.
struct NonTerminating : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Value iteration exceeded the sweep cap; signals misconfiguration.
struct IterationCap : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A policy grid is not threshold-shaped.
struct StructureViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace wearopt
