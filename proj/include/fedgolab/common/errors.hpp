#pragma once

#include <stdexcept>
#include <string>

namespace fedgo {

/// Bad user-supplied configuration: wrong shapes, missing fields, invalid
/// hyperparameters. Maps to CLI exit code 2.
class config_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A computed value violated an internal invariant (non-finite entry,
/// malformed target row, mass row not normalized).
class validation_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Filesystem failure. Maps to CLI exit code 3.
class io_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace fedgo
