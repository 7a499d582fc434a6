#pragma once

#include <stdexcept>
#include <string>

namespace sqz {

/// A value outside its physical domain (efficiency > 1, pump above threshold, ...).
class UnphysicalError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed request: bad ranges, structural scenario violations.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical result that should be impossible for valid inputs.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Scenario text that does not parse. Carries the 1-based line number (0 when
/// the problem is not tied to a line).
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace sqz
