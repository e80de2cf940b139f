#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace flextpu {

// All library failures derive from Error so the CLI can map them to exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input text (CSV rows, config lines). Carries the 1-based line number.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// A value violates a domain invariant (layer geometry, array size, empty input).
class ValidationError : public Error {
public:
    using Error::Error;
};

class EmptyTopologyError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// Two inputs that must describe the same thing do not (schedule vs. plans).
class ConsistencyError : public Error {
public:
    using Error::Error;
};

// A configurable size guard was exceeded (operand-trace cap).
class ResourceError : public Error {
public:
    using Error::Error;
};

// Accumulator left its signed accum_bits range.
class OverflowError : public Error {
public:
    using Error::Error;
};

// The cycle-level simulation disagreed with the trace or the analytical model.
class VerifyMismatch : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace flextpu
