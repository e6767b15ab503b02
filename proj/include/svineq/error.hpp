#pragma once

#include <stdexcept>
#include <string>

namespace svineq {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shape mismatch between operands.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// An index i or k outside its legal range.
class IndexError : public Error {
public:
    using Error::Error;
};

/// Inequality id not present in the catalog, or a config that violates its invariants.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Convergence failure inside a numerical kernel.
class NumericalError : public Error {
public:
    using Error::Error;
};

enum class ParseErrorKind {
    malformed_json,
    schema,
    wrong_length,
    non_finite,
    imaginary_in_real,
};

inline const char* to_string(ParseErrorKind kind) {
    switch (kind) {
    case ParseErrorKind::malformed_json: return "malformed_json";
    case ParseErrorKind::schema: return "schema";
    case ParseErrorKind::wrong_length: return "wrong_length";
    case ParseErrorKind::non_finite: return "non_finite";
    case ParseErrorKind::imaginary_in_real: return "imaginary_in_real";
    }
    return "unknown";
}

class ParseError : public Error {
public:
    ParseError(ParseErrorKind kind, const std::string& what)
        : Error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ParseErrorKind kind() const noexcept { return kind_; }

private:
    ParseErrorKind kind_;
};

} // namespace svineq
