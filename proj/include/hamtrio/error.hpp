#pragma once

#include <stdexcept>
#include <string>

namespace hamtrio {

// Base class for all toolkit errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed expression or operator-file text.
struct ParseError : Error {
  explicit ParseError(const std::string& what) : Error(what) {}
};

// Structurally invalid user data: bad dimensions, asymmetric metric, tail
// entries containing field variables, unknown fixture names, ...
struct InputError : Error {
  explicit InputError(const std::string& what) : Error(what) {}
};

// A symbolically zero determinant where non-degeneracy is required.
// Carries the offending determinant so reports can show it.
struct DegeneracyError : Error {
  DegeneracyError(const std::string& what, std::string det)
      : Error(what), determinant(std::move(det)) {}
  std::string determinant;
};

// Violation of an invariant the code itself guarantees.
struct InternalError : Error {
  explicit InternalError(const std::string& what) : Error(what) {}
};

}  // namespace hamtrio
