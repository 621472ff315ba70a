#pragma once

#include <stdexcept>
#include <string>

namespace ssg {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input document (bad JSON, bad CSV row, wrong header, ...).
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(what) {}
};

/// Structurally valid input that violates a semantic rule
/// (dangling edge endpoint, duplicate id, degenerate centerline, ...).
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error(what) {}
};

/// Filesystem failure, reported with the offending path.
class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(what) {}
};

} // namespace ssg
