#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace latgauss {

// Bad arguments, dimension mismatches, out-of-range parameters.
// CLI maps this to exit code 2.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// A guard rail was hit (enumeration cap, guess-space cap, ...).
// CLI maps this to exit code 3.
class SizeLimitError : public std::runtime_error {
 public:
  SizeLimitError(const std::string& msg, std::uint64_t count_reached)
      : std::runtime_error(msg), count(count_reached) {}
  std::uint64_t count;
};

}  // namespace latgauss
