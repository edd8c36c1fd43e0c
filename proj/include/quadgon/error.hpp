#pragma once

#include <stdexcept>
#include <string>

namespace quadgon {

/// Precondition or domain error raised by any quadgon operation.  The message
/// carries the short diagnostic named by the operation ("empty system",
/// "colliding supports", ...).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A random construction that kept landing in a special position, or a
/// computed check that came out wrong.  Distinct from bad input.
class CheckFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace quadgon
