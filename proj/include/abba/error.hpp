#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace abba {

/// Raised when an argument violates a documented precondition.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised by the ingestion layer; carries the 1-based line that failed.
class IngestError : public std::runtime_error {
public:
    IngestError(const std::string& what, std::size_t line)
        : std::runtime_error(line == 0 ? what : what + " (line " + std::to_string(line) + ")"),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Throws InvalidInput(message) unless `condition` holds.
inline void require(bool condition, const char* message) {
    if (!condition) {
        throw InvalidInput(message);
    }
}
} // namespace abba
