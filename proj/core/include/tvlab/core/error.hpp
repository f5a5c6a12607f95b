#pragma once

#include <stdexcept>
#include <string>

namespace tvlab {

/// Malformed or inconsistent user input (bad files, unknown element ids, wrong
/// dimensions). The CLI maps this to exit code 3.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An internal exact self-check failed. Never expected; signals a bug.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace tvlab
