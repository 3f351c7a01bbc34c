#pragma once

#include <stdexcept>
#include <string>

namespace orispan {

// Caller violated a documented precondition (CLI exit code 1).
class UsageError : public std::invalid_argument {
public:
    explicit UsageError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Input data failed validation (CLI exit code 2).
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// A should-not-happen condition inside the library (CLI exit code 3).
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

} // namespace orispan
