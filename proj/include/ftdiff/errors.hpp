#pragma once

#include <stdexcept>
#include <string>

namespace ftdiff {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Schema or value violation in a scenario configuration. `path` is the
/// JSON-pointer-like location of the offending field.
class ConfigInvalid : public Error {
public:
    ConfigInvalid(std::string path, const std::string& what)
        : Error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

class NumericalBlowup : public Error {
public:
    using Error::Error;
};

class IoFailure : public Error {
public:
    using Error::Error;
};

class InfeasibleGains : public Error {
public:
    using Error::Error;
};

class AlphaZero : public Error {
public:
    using Error::Error;
};

class BoundVacuous : public Error {
public:
    using Error::Error;
};

class DegenerateFit : public Error {
public:
    using Error::Error;
};

class MismatchedScenario : public Error {
public:
    using Error::Error;
};

}  // namespace ftdiff
