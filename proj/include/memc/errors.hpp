#pragma once

#include <stdexcept>
#include <string>

namespace memc {

// Bad input: malformed files, invalid parameters, violated preconditions.
// CLI maps this to exit code 1.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Problem too large for the requested method (basis/state blow-up).
// CLI maps this to exit code 2.
class CapacityError : public std::runtime_error {
public:
    explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed text input; carries the 1-based line where parsing failed.
class ParseError : public ValidationError {
public:
    ParseError(const std::string& what, int line)
        : ValidationError(what + " (line " + std::to_string(line) + ")"), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// A proposed assignment that does not describe a valid multiway cut.
class InfeasibleSolutionError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

}  // namespace memc
