#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kconv {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A graph, vertex set or formula violated a structural precondition.
class InvalidInput : public Error {
public:
    using Error::Error;
};

enum class ParseErrorKind {
    malformed_line,
    malformed_header,
    self_loop,
    duplicate_edge,
    id_overflow,
    wrong_arity,
    variable_out_of_range,
};

inline const char* to_string(ParseErrorKind kind) {
    switch (kind) {
    case ParseErrorKind::malformed_line: return "malformed line";
    case ParseErrorKind::malformed_header: return "malformed header";
    case ParseErrorKind::self_loop: return "self-loop";
    case ParseErrorKind::duplicate_edge: return "duplicate edge";
    case ParseErrorKind::id_overflow: return "id overflow";
    case ParseErrorKind::wrong_arity: return "wrong clause arity";
    case ParseErrorKind::variable_out_of_range: return "variable out of range";
    }
    return "unknown";
}

class ParseError : public Error {
public:
    ParseError(ParseErrorKind kind, std::size_t line, const std::string& detail)
        : Error("line " + std::to_string(line) + ": " + to_string(kind) +
                (detail.empty() ? std::string{} : ": " + detail)),
          kind_(kind),
          line_(line) {}

    ParseErrorKind kind() const noexcept { return kind_; }
    std::size_t line() const noexcept { return line_; }

private:
    ParseErrorKind kind_;
    std::size_t line_;
};

/// An exhaustive search would exceed its configured budget.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

/// An internal cross-check failed. Indicates a bug or (for randomized
/// routines) exhausted retries; never an input condition.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

} // namespace kconv
