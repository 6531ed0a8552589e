#pragma once

#include <stdexcept>
#include <string>

namespace trajint {

/// Raised when an operation's precondition does not hold (invalid node path,
/// leaf outside the conditioning node, missing table entry, ...).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed model, payoff, or portfolio input. The CLI maps this to exit 2.
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace trajint
