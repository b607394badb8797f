#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace curvelike {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input data (bad genus, negative multiplicity, ...).
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// Two divisors that must live on the same curve configuration do not.
class ConfigMismatch : public InvalidInput {
public:
    ConfigMismatch() : InvalidInput("divisors live on different curve configurations") {}
};

/// An operation's numerical precondition failed; the message names the inequality.
class PreconditionFailed : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

/// An exhaustive search would exceed its configured cap.
class SearchSpaceTooLarge : public Error {
public:
    using Error::Error;
};

/// Violated internal invariant; indicates a bug rather than bad input.
class InternalError : public Error {
public:
    using Error::Error;
};

class ParseError : public InvalidInput {
public:
    ParseError(std::size_t line, const std::string& what)
        : InvalidInput("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace curvelike
