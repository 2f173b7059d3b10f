#pragma once

#include <stdexcept>
#include <string>

namespace srs {

// Invalid argument combinations (bad sizes, out-of-range parameters, ...).
class ArgumentError : public std::invalid_argument {
public:
    explicit ArgumentError(const std::string& what) : std::invalid_argument(what) {}
};

// Request exceeds a configured capacity limit (e.g. exhaustive search width).
class CapacityError : public std::runtime_error {
public:
    explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// File system failures: missing files, unwritable paths.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed file contents. Carries a 1-based line number when known.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, long line = 0)
        : std::runtime_error(line > 0 ? what + " (line " + std::to_string(line) + ")" : what),
          line_(line) {}
    long line() const { return line_; }

private:
    long line_ = 0;
};

} // namespace srs
