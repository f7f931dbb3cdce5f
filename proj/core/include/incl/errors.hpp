#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace incl {

/// Input refers to something outside the allowed domain (unknown variable,
/// value outside the model, team-domain mismatch, ...).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// The formula lies outside the fragment an operation handles.
class UnsupportedFragment : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An exponential procedure refused to run because its input is over the
/// configured size guard.
class GuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A generator or solver was handed an instance violating its precondition.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A strategy or other structured input failed validation.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace incl
