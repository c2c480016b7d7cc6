#pragma once

#include <stdexcept>
#include <string>

namespace ksr {

/// Base class for every error raised by the library. `module()` names the
/// component that rejected the input so the CLI can report it.
class Error : public std::runtime_error {
 public:
  Error(std::string module, const std::string& what)
      : std::runtime_error(module + ": " + what), module_(std::move(module)) {}
  const std::string& module() const noexcept { return module_; }

 private:
  std::string module_;
};

/// Malformed or invalid caller input.
class InputError : public Error {
 public:
  using Error::Error;
};

/// An internal invariant failed; indicates a bug or an inconsistent input set.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// Well-formed request for something this library does not model
/// (non-equal-rank real forms, exceptional matrix models, ...).
class OutOfScopeError : public Error {
 public:
  using Error::Error;
};

/// An odd ad-H degree was met where an even grading is required.
class OddGradingError : public OutOfScopeError {
 public:
  using OutOfScopeError::OutOfScopeError;
};

/// A randomized search exhausted its budget. Carries a human-readable report.
class DiagnosticError : public Error {
 public:
  using Error::Error;
};

}  // namespace ksr
