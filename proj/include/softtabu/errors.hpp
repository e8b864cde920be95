#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace softtabu {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid parameters or inputs that violate a documented precondition.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Malformed text input. line() is 1-based; 0 when no line applies.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message, const std::string& source = {})
      : Error((source.empty() ? std::string() : source + ": ") +
              (line == 0 ? message : "line " + std::to_string(line) + ": " + message)),
        line_(line),
        message_(message) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::size_t line_;
  std::string message_;
};

class TrainingError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace softtabu
