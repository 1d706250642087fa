#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ecl {

// Bad input that a user can fix: unknown names, malformed models, etc.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public ValidationError {
 public:
  SyntaxError(const std::string& msg, std::size_t pos)
      : ValidationError(msg + " at position " + std::to_string(pos)), position_(pos) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Input outside the fragment an operation is defined on.
class FragmentError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ecl
