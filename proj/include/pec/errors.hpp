#pragma once

#include <stdexcept>

namespace pec {

// A distribution, parameter, or structural input failed validation.
class validation_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An exact enumeration would exceed the configured state budget.
// Exact paths refuse instead of silently falling back to sampling.
class budget_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pec
