#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace polysub {

// Malformed or inconsistent arguments (dimension mismatch, bad indices, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A value left the domain of an analytic kernel.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Cache-network load at or above 1: the queues are unstable.
class StabilityError : public DomainError {
 public:
  using DomainError::DomainError;
};

// An exhaustive oracle was asked to run beyond its size guard.
class GuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace polysub
