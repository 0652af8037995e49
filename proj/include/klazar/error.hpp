#pragma once

#include <stdexcept>
#include <string>

namespace klazar {

/// Input that violates an operation's contract (malformed partition text,
/// out-of-range subset, arity mismatch, ...). The CLI maps this to exit 2.
struct domain_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A resource guard declined to run the computation at the requested size.
/// Guards are soft: callers can override them explicitly. CLI exit 3.
struct guard_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace klazar
