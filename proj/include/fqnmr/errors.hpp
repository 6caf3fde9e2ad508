#pragma once

#include <stdexcept>
#include <string>

namespace fqnmr {

// Base class for everything thrown by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Field or coupling requested exactly on a wire.
class SingularEvaluation : public Error {
 public:
  explicit SingularEvaluation(const std::string& msg) : Error(msg) {}
};

// A closed-form signal was evaluated outside its validity regime.
class OutOfRegime : public Error {
 public:
  explicit OutOfRegime(const std::string& msg) : Error(msg) {}
};

// Voxel grid would exceed the cell budget.
class CapacityError : public Error {
 public:
  explicit CapacityError(const std::string& msg) : Error(msg) {}
};

// Root bracket endpoints evaluate to the same side.
class BracketError : public Error {
 public:
  explicit BracketError(const std::string& msg) : Error(msg) {}
};

// Signal kernel vanishes (symmetry-suppressed setup).
class NoSignalError : public Error {
 public:
  explicit NoSignalError(const std::string& msg) : Error(msg) {}
};

// Quadrature or solver failed to reach its accuracy target.
class AccuracyError : public Error {
 public:
  explicit AccuracyError(const std::string& msg) : Error(msg) {}
};

// Invalid configuration or overrides.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

}  // namespace fqnmr
