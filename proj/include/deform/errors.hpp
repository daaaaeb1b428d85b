#pragma once

#include <stdexcept>
#include <string>

namespace deform {

/// Syntax error in a problem file or expression, with source position.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string msg, int line, int column)
        : std::runtime_error(std::move(msg)), line_(line), column_(column) {}
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

/// Evaluation at a pole of a rational function. Callers interpret this as
/// "the requested point lies outside the certified interval".
class PoleError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A word budget or search depth was exhausted before the goal was reached.
class BudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace deform
