#pragma once

#include <stdexcept>
#include <string>

namespace rutherford {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on an argument did not hold.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Two objects that must share a grid were built on different ones.
class GridMismatch : public Error {
public:
    using Error::Error;
};

/// Elimination hit a zero (or non-finite) pivot.
class SolverBreakdown : public Error {
public:
    using Error::Error;
};

/// Wave-function amplitude reached the box edge.
class BoundaryContamination : public Error {
public:
    using Error::Error;
};

/// A configuration entry was unknown, malformed or out of range.
class ConfigError : public Error {
public:
    ConfigError(std::string key, const std::string& what)
        : Error(key + ": " + what), key_(std::move(key)) {}

    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

} // namespace rutherford
