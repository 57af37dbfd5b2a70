#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pgrp {

// All library failures derive from Error so callers can map them onto exit
// codes without caring about the concrete kind.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

class ResourceError : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& message)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                message),
          line_(line),
          column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

// Relation violates the ordering rules of a power-conjugate presentation.
class InvariantError : public Error {
public:
    using Error::Error;
};

class DuplicateRelationError : public InvariantError {
public:
    using InvariantError::InvariantError;
};

class NotCentralError : public Error {
public:
    using Error::Error;
};

class ClassError : public Error {
public:
    using Error::Error;
};

class ShapeError : public Error {
public:
    using Error::Error;
};

class UnsupportedError : public Error {
public:
    using Error::Error;
};

// A computed structure contradicts a proven statement about Camina groups;
// always indicates either a bad input or a bug.
class ContradictionError : public Error {
public:
    using Error::Error;
};

class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace pgrp
