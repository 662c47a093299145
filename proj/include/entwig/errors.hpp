#pragma once

#include <stdexcept>
#include <string>

namespace entwig {

/// Bad user input or broken precondition (dimension mismatch, malformed
/// config, non-density input, ...).
struct ValidationError : std::invalid_argument {
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// The truncated Fock space is too small for the requested amplitude:
/// the state leaks past the cutoff by more than the allowed tail mass.
struct TruncationError : std::runtime_error {
  explicit TruncationError(const std::string& what) : std::runtime_error(what) {}
};

/// The reduced state is too close to a pure state for the entropy
/// operator to exist (its coefficients diverge there).
struct NearPureError : std::runtime_error {
  explicit NearPureError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace entwig
