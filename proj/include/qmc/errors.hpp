#pragma once

#include <stdexcept>
#include <string>

namespace qmc {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input, schema violations, inconsistent payloads. CLI exit code 3.
struct DataError : Error {
  using Error::Error;
};

// Numeric failures: divergence, caps exceeded, singular systems. CLI exit code 4.
struct NumericError : Error {
  using Error::Error;
};

}  // namespace qmc
