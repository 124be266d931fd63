#pragma once

#include <stdexcept>
#include <string>

namespace autseq {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed user input: bad digits, bad widths, syntax errors, unknown names.
class InputError : public Error {
public:
    using Error::Error;
};

/// Operands that do not fit together (alphabet mismatch, bad track index).
class StructuralError : public Error {
public:
    using Error::Error;
};

/// A configured resource cap was exceeded.
class ResourceError : public Error {
public:
    using Error::Error;
};

/// A count that should be finite turned out to be infinite.
class DivergenceError : public Error {
public:
    using Error::Error;
};

/// Syntax error with a 1-based source position.
class SyntaxError : public InputError {
public:
    SyntaxError(const std::string& message, int line, int column)
        : InputError(message + " at " + std::to_string(line) + ":" + std::to_string(column)),
          line_(line),
          column_(column) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

}  // namespace autseq
