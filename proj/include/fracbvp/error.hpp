#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fracbvp {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Expression text that does not match the grammar, or names an unknown
/// identifier, or calls a function with the wrong number of arguments.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// Expression evaluation hit ln(x<=0), sqrt(x<0), x/0 or a non-finite value.
class EvalError : public DomainError {
public:
    using DomainError::DomainError;
};

class QuadratureError : public Error {
public:
    using Error::Error;
};

class SolverError : public Error {
public:
    using Error::Error;
};

/// Malformed problem file, CSV, or command-line input.
class InputError : public Error {
public:
    using Error::Error;
};

} // namespace fracbvp
