#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace seedsim {

// Bad user input: malformed files, invalid parameters, inconsistent config.
// The CLI maps this to exit code 1; anything else lands on exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& message)
      : InputError("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace seedsim
