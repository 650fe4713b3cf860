#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tradenet {

// Root of the library error hierarchy. UsageError means the request itself
// is contradictory (CLI exit 1); DataError means the input data cannot
// support the requested computation (CLI exit 2).
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class UsageError : public Error {
public:
    using Error::Error;
};

class DataError : public Error {
public:
    using Error::Error;
};

class MalformedRowError : public DataError {
public:
    MalformedRowError(std::size_t line, const std::string& what)
        : DataError("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

class DuplicateCodeError : public DataError {
public:
    using DataError::DataError;
};

class EmptyInputError : public DataError {
public:
    using DataError::DataError;
};

class UnknownNodeError : public DataError {
public:
    explicit UnknownNodeError(const std::string& code)
        : DataError("unknown economy code: " + code) {}
};

class UnknownEdgeError : public DataError {
public:
    UnknownEdgeError(const std::string& source, const std::string& target)
        : DataError("unknown trade relationship: " + source + "->" + target) {}
};

class DegenerateBaselineError : public DataError {
public:
    using DataError::DataError;
};

class IncompatibleStrategyError : public UsageError {
public:
    using UsageError::UsageError;
};

class ZeroVarianceError : public DataError {
public:
    using DataError::DataError;
};

class LengthMismatchError : public DataError {
public:
    using DataError::DataError;
};

}  // namespace tradenet
