#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gestrec {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file. Carries the byte offset where parsing stopped.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : Error(what + " at byte " + std::to_string(offset)), offset_(offset) {}

    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

/// A precondition on an argument was violated.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Segmentation produced no foreground pixels; the query cannot be classified.
class EmptyForegroundError : public Error {
public:
    using Error::Error;
};

/// An operation would overwrite existing state (duplicate label, existing registry).
class ConflictError : public Error {
public:
    using Error::Error;
};

/// A registry or dataset on disk is missing, corrupt, or inconsistent.
class LoadError : public Error {
public:
    using Error::Error;
};

/// Synthetic geometry left the frame or violated the margin rule.
class GenerationError : public Error {
public:
    using Error::Error;
};

/// Inputs are individually valid but mutually inconsistent (e.g. dataset
/// label missing from the registry).
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace gestrec
