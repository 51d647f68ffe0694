#pragma once

#include <stdexcept>
#include <string>

namespace mewis {

/// Raised for bad caller input: malformed files, size mismatches, values out
/// of range. The CLI maps it to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a bounded search runs out of its budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mewis
