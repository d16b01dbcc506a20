#pragma once

#include <stdexcept>
#include <string>

namespace monospline {

// Argument outside the mathematical domain (negative data, t outside the
// breakpoint range, non-finite input).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Hermite data that no monotone interpolant can match.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Data outside the applicability range of a construction. The message names
// the violated inequality.
class RangeError : public std::range_error {
 public:
  using std::range_error::range_error;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file; the message carries the line or field.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace monospline
