#ifndef PARTSRL_ERRORS_HPP_
#define PARTSRL_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace partsrl {

// Base for every recoverable data error raised by the library. The CLI maps
// these to exit code 1; anything else is a usage problem or a bug.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. `line()` is 1-based, or 0 when the error is reported
// as a character offset instead (bracketed trees).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Well-formed input that violates a domain invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Tree leaves that do not line up with sentence tokens.
class AlignmentError : public Error {
 public:
  using Error::Error;
};

}  // namespace partsrl

#endif  // PARTSRL_ERRORS_HPP_
