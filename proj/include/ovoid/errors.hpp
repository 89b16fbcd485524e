#ifndef OVOID_ERRORS_HPP
#define OVOID_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ovoid {

// Precondition violated by an argument value (inverting zero, X == Y, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Parameters outside the supported range (q even, q too large, ...).
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// No congruence exists between two quadratic forms in the admissible class.
class IncompatibleFormsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed serialized input. `line` is 1-based, 0 when unknown.
class InputError : public std::runtime_error {
 public:
  InputError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace ovoid

#endif  // OVOID_ERRORS_HPP
