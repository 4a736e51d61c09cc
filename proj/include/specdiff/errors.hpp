#pragma once

#include <stdexcept>
#include <string>

namespace specdiff {

// Invalid inputs, configs or preconditions. The CLI maps this to exit code 1;
// anything else escaping a command maps to exit code 2.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace specdiff
