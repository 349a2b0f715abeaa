#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tel {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text. Line and column are 1-based.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// A rule or program is outside the class an operation accepts
/// (unsafe variable, untyped variable, non-positive input, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A configured search or enumeration bound was exceeded.
class ResourceLimit : public Error {
public:
    using Error::Error;
};

} // namespace tel
