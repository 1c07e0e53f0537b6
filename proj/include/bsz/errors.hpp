#pragma once

#include <stdexcept>

namespace bsz {

// Precondition on an argument was violated.
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A table or buffer would exceed its configured limit.
struct CapacityError : std::length_error {
  using std::length_error::length_error;
};

// An exact integer intermediate does not fit its fixed width.
struct OverflowError : std::overflow_error {
  using std::overflow_error::overflow_error;
};

// A brute-force computation exceeds its operation budget.
struct FeasibilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace bsz
