#pragma once

#include <stdexcept>

namespace dvl {

// Raised when an iterative numeric procedure (quadrature, tail estimation)
// cannot reach its requested accuracy.
struct NumericFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace dvl
