#pragma once

#include <stdexcept>
#include <string>

namespace qreg {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A caller violated an operation's contract (bad index, bad arity, ...).
class InvalidArgumentError : public Error {
  public:
    using Error::Error;
};

/// A requested register or matrix exceeds the configured capacity.
class CapacityError : public Error {
  public:
    using Error::Error;
};

/// A state no longer satisfies the invariants an operation relies on.
class InvalidStateError : public Error {
  public:
    using Error::Error;
};

/// Text input (circuit file, formula file) failed to parse.
class ParseError : public InvalidArgumentError {
  public:
    ParseError(int line, const std::string &what)
        : InvalidArgumentError("line " + std::to_string(line) + ": " + what),
          line_(line) {}

    int line() const { return line_; }

  private:
    int line_;
};

} // namespace qreg
