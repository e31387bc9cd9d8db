#pragma once

#include <stdexcept>

namespace depcor {

/// Bad or degenerate input data (constant columns, ragged CSV rows, ...).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter outside its documented range.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace depcor
