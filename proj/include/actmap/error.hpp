#pragma once

#include <stdexcept>
#include <string>

namespace actmap {

enum class ErrorKind {
    Argument,
    Io,
    Parse,
    Invalid,
};

// Source location of a diagnostic: file (or buffer name) plus 1-based line.
// line == 0 means "no line information".
struct Location {
    std::string source;
    int line = 0;

    std::string str() const {
        if (source.empty()) return {};
        if (line <= 0) return source;
        return source + ":" + std::to_string(line);
    }
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string message)
        : std::runtime_error(std::move(message)), kind_(kind) {}

    Error(ErrorKind kind, Location where, const std::string& message)
        : std::runtime_error(where.str().empty() ? message : where.str() + ": " + message),
          kind_(kind),
          where_(std::move(where)) {}

    ErrorKind kind() const { return kind_; }
    const Location& where() const { return where_; }

private:
    ErrorKind kind_;
    Location where_;
};

} // namespace actmap
