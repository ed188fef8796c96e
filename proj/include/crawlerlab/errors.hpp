#pragma once

#include <stdexcept>
#include <string>

namespace crawler {

// Base of every library error. The CLI maps ConfigError to exit code 2 and
// everything else to exit code 1.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
public:
    using Error::Error;
};

class AssumptionViolation : public Error {
public:
    AssumptionViolation(std::string bound, const std::string& what)
        : Error(what), bound_(std::move(bound)) {}
    const std::string& bound() const { return bound_; }

private:
    std::string bound_;
};

class Degenerate : public Error {
public:
    using Error::Error;
};

class NoCycle : public Error {
public:
    using Error::Error;
};

class StiffnessFailure : public Error {
public:
    using Error::Error;
};

class LayerFailure : public Error {
public:
    using Error::Error;
};

class Infeasible : public Error {
public:
    using Error::Error;
};

class NoSwitching : public Error {
public:
    using Error::Error;
};

class SaturatedInput : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace crawler
