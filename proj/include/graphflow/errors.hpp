#pragma once

#include <stdexcept>
#include <string>

namespace graphflow {

/// Malformed input text (edge lists, config files). Carries a line number when known.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, int line = -1)
        : std::runtime_error(line >= 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

/// Invalid configuration (bad parameter combinations, unknown names).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Out-of-range or inconsistent call arguments.
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Input exceeds a hard enumeration guard (exact oracles, exact matching).
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operation not defined for the requested model or method.
class UnsupportedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Structurally degenerate instance (e.g. no valid candidate remains).
class DegenerateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Filesystem failure.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace graphflow
