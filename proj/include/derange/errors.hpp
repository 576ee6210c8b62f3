#pragma once

#include <stdexcept>
#include <string>

namespace derange {

// Raised when two independent computation routes that must agree do not.
// The CLI maps this to exit code 2; preconditions use std::invalid_argument.
class internal_consistency_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace derange
