#pragma once

#include <stdexcept>
#include <string>

namespace entemd {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A configuration value or constructor argument violates its invariant.
class ParameterError : public Error {
public:
    using Error::Error;
};

// Input has the wrong shape for the operation (too short, length mismatch, ...).
class StructuralError : public Error {
public:
    using Error::Error;
};

// Not enough extrema to build an envelope. Sifting callers treat this as
// the residue condition rather than a failure.
class InsufficientExtrema : public StructuralError {
public:
    using StructuralError::StructuralError;
};

// Malformed input file. line() is 1-based; 0 when not tied to a line.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

    // Same error with a leading context string such as the file path.
    ParseError with_context(const std::string& context) const {
        return ParseError(context + ": " + what(), line_, Raw{});
    }

private:
    struct Raw {};
    ParseError(const std::string& what, std::size_t line, Raw) : Error(what), line_(line) {}

    std::size_t line_;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace entemd
