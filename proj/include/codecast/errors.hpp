#pragma once

#include <stdexcept>
#include <string>

namespace codecast {

/// Caller violated an interface contract (bad argument, length mismatch).
struct usage_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Input is structurally valid but outside the supported domain
/// (demand of 1 for LT analytics, dead channel, inverse of zero).
struct domain_error : std::domain_error {
  using std::domain_error::domain_error;
};

/// A received packet stream is internally inconsistent.
struct stream_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A configuration file could not be read or parsed.
struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace codecast
