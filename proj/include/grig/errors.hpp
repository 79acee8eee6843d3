#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace grig {

// Raised when an evaluation needs an omega letter beyond the defined range
// of a finite (non-periodic) omega prefix.
class InsufficientOmegaError : public std::runtime_error {
 public:
  explicit InsufficientOmegaError(std::size_t index)
      : std::runtime_error("omega letter " + std::to_string(index) +
                           " is not defined"),
        index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

// Raised when a computation exceeds its configured node/support budget.
// Callers get a hard error instead of a silently truncated answer.
class ResourceCapError : public std::runtime_error {
 public:
  explicit ResourceCapError(const std::string& what)
      : std::runtime_error(what) {}
};

class ShiftOverflowError : public std::runtime_error {
 public:
  explicit ShiftOverflowError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace grig
