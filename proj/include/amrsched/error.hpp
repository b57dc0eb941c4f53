#pragma once

#include <stdexcept>
#include <string>

namespace amrsched {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input text (Solomon files, instance or plan documents).
struct ParseError : Error {
  using Error::Error;
};

/// The instance cannot be served at all, e.g. a demand above capacity.
struct InfeasibleError : Error {
  using Error::Error;
};

}  // namespace amrsched
