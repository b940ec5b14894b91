#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ocedforge {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input could not be opened or decompressed.
class IoError : public Error {
public:
    using Error::Error;
};

/// Syntax error in XML or Turtle input, with a 1-based source location.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : Error(what + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
          line_(line),
          column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Well-formed input that violates a structural rule (duplicate key, bad date,
/// unsupported construct).
class StructuralError : public Error {
public:
    using Error::Error;
};

class DuplicateIdError : public Error {
public:
    using Error::Error;
};

/// A relation endpoint does not resolve to an existing entity.
class IntegrityError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class SerializationError : public Error {
public:
    using Error::Error;
};

/// Two terms outside a common comparable class were ordered.
class TermTypeError : public Error {
public:
    using Error::Error;
};

} // namespace ocedforge
