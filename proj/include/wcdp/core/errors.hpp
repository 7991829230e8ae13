#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wcdp {

/// Violation of a program invariant (unknown reference, lower > upper, ...).
class ProgramError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An exhaustive procedure was asked to go beyond its configured limit.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input outside the domain of an operation (odd partition total, overweight edge, PWC given to the DP, ...).
class RejectionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
          line_(line),
          column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

}  // namespace wcdp
