#pragma once

#include <stdexcept>
#include <string>

namespace rauzy {

/// Malformed or out-of-range input (bad letters, empty images, bad syntax).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A mathematical precondition of an operation does not hold for the given
/// (well-formed) input, e.g. conjugating when some occurrence of b is not
/// preceded by c.
class PreconditionFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rauzy
