#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace scoda {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text. Carries the 1-based line number when known.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Input violates a documented precondition (bad id, non-positive weight, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A quantity is mathematically undefined for the given input.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Caller broke an API contract (e.g. a stream that does not match its graph).
class ContractError : public Error {
public:
    using Error::Error;
};

}  // namespace scoda
