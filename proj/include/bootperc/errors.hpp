#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace bootperc {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller-supplied value is outside the operation's domain.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Malformed graph file; carries the 1-based line number of the offending line.
class FormatError : public Error {
 public:
  FormatError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Construction parameters violate the hypotheses of the family.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A generator's post-construction audit disagreed with its guarantee.
class AuditFailure : public Error {
 public:
  using Error::Error;
};

// A constructive step could not be carried out on this instance (usually
// because the instance is below the size where the argument applies).
class HypothesisFailure : public Error {
 public:
  HypothesisFailure(std::string step, const std::string& what)
      : Error(step + ": " + what), step_(std::move(step)) {}

  const std::string& step() const noexcept { return step_; }

 private:
  std::string step_;
};

}  // namespace bootperc
