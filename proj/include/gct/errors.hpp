#pragma once

#include <stdexcept>
#include <string>

namespace gct {

// Unreadable input. Maps to exit code 1.
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Malformed input or a violated axiom in the input data. Exit code 2.
class ValidationError : public std::runtime_error {
public:
  ValidationError(std::string axiom, const std::string& message)
      : std::runtime_error(message), axiom_(std::move(axiom)) {}
  const std::string& axiom() const noexcept { return axiom_; }

private:
  std::string axiom_;
};

// Something the library itself computed is inconsistent. Exit code 3.
class InvariantError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace gct
