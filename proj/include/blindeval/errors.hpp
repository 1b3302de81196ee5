#pragma once

#include <stdexcept>
#include <string>

namespace blindeval {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Caller misuse: inconsistent configuration, bad argument shapes.
// The CLI maps this to exit code 1.
class UsageError : public Error {
public:
    using Error::Error;
};

// Problems with the data itself: unknown ids, empty intersections,
// degenerate training sets. The CLI maps this to exit code 2.
class DataError : public Error {
public:
    using Error::Error;
};

// Malformed input file. Carries the 1-based line and field position.
class ParseError : public DataError {
public:
    ParseError(const std::string& path, std::size_t line, std::size_t column,
               const std::string& what_failed)
        : DataError(path + ":" + std::to_string(line) + ":" + std::to_string(column) +
                    ": " + what_failed),
          line_(line),
          column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

}  // namespace blindeval
