#pragma once

#include <stdexcept>
#include <string>

namespace rtm {

// Request exceeds a built-in resource guard (factorial blow-up, matrix
// dimension cap). The CLI maps this to exit code 3.
struct ResourceError : std::runtime_error {
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure: eigensolver non-convergence, residual over budget,
// quadrature breakdown.
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rtm
