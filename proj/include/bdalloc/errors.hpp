#ifndef BDALLOC_ERRORS_HPP
#define BDALLOC_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bdalloc {

// Bad user input: malformed files, invalid graphs, out-of-range parameters.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A mathematical invariant that must hold for valid inputs was violated,
// i.e. a bug in this library rather than in the caller's data.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace bdalloc

#endif  // BDALLOC_ERRORS_HPP
