#pragma once

#include <stdexcept>
#include <string>

namespace spintradeoff {

// Thrown when an iterative routine fails to converge or a computed quantity
// violates a guaranteed numeric bound. The message carries diagnostics
// (residuals, iteration counts) for the caller.
class numeric_error : public std::runtime_error {
 public:
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace spintradeoff
