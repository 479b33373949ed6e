#pragma once

#include <stdexcept>
#include <string>

namespace ebloch {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the domain of a numeric function (on a cut, at a pole).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Caller broke a documented precondition (wrong parity for the mode, bad
// vertex pair, ...).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// Degenerate geometry: coincident points or a flat simplex.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Integer system without solution, or an integer overflow inside the
// normal-form routines.
class IntegerSystemError : public Error {
 public:
  using Error::Error;
};

// A numerically derived quantity that must be an integer (branch correction,
// multiple of pi*i) is not.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace ebloch
