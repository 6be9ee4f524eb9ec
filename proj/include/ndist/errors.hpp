#pragma once

#include <stdexcept>
#include <string>

namespace ndist {

/// Bad argument to a library call (index out of range, empty input, ...).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Inconsistent construction request: unknown distance name, bad arity,
/// mismatched spaces, unmet declared preconditions.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A function claimed to be an n-distance produced a positive value whose
/// simplex denominator vanished, so no finite constant can hold.
class AxiomViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative evaluation could not certify its answer.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Graph violates a structural requirement (disconnected, loops, ...).
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotMedianError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegenerateInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ndist
