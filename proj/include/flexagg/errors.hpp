#pragma once

#include <stdexcept>
#include <string>

namespace flexagg {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad arguments: dimension mismatch, out-of-range parameters, malformed input.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

class EmptyPolytope : public Error {
public:
    using Error::Error;
};

// Non-empty but without interior (Chebyshev radius below the degeneracy tolerance).
class DegeneratePolytope : public Error {
public:
    using Error::Error;
};

// The simplex or barrier iteration could not produce a trustworthy answer.
class NumericalFailure : public Error {
public:
    using Error::Error;
};

// Scenario / interchange file does not match the documented schema.
class SchemaError : public Error {
public:
    SchemaError(std::string path, const std::string& message)
        : Error(path + ": " + message), path_(std::move(path)) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

// A device's parameters describe an empty feasible set.
class InfeasibleModel : public Error {
public:
    InfeasibleModel(int device, const std::string& message)
        : Error("device " + std::to_string(device) + ": " + message), device_(device) {}
    int device() const { return device_; }

private:
    int device_;
};

} // namespace flexagg
