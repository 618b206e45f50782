#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wristauth {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text (trial files, profile documents, manifests).
/// Carries a 1-based line number when the source is line oriented.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg, std::size_t line = 0)
        : Error(line > 0 ? msg + " (line " + std::to_string(line) + ")" : msg),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Structurally well-formed input that violates a domain invariant
/// (non-monotone timestamps, too few samples, inconsistent weights, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Precondition violation on an operation argument.
class DomainError : public Error {
public:
    using Error::Error;
};

/// An iterative solver failed to reach its tolerance.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Filesystem-level failure.
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace wristauth
