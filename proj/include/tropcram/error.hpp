#pragma once

#include <stdexcept>
#include <string>

namespace tropcram {

// Precondition violations and oracle caps. Carries the name of the operation
// that rejected its input so the CLI can report it.
class DomainError : public std::domain_error {
 public:
  DomainError(std::string operation, const std::string& message)
      : std::domain_error(operation + ": " + message),
        operation_(std::move(operation)),
        message_(message) {}

  const std::string& operation() const noexcept { return operation_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::string operation_;
  std::string message_;
};

// Malformed input documents (JSON schema violations, unparsable numbers).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tropcram
