#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace cpccms {

/// Caller supplied something outside an operation's documented domain.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what, std::vector<std::string> details = {})
      : std::invalid_argument(what), details_(std::move(details)) {}

  const std::vector<std::string>& details() const noexcept { return details_; }

 private:
  std::vector<std::string> details_;
};

/// Shape problems that make a matrix unusable (not square, too small, bad kappa).
class StructuralError : public InputError {
 public:
  using InputError::InputError;
};

/// The operation is valid but the object is not in a state that allows it
/// (e.g. ranking a session that has no scores attached).
class ConflictError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotFoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cpccms
