#pragma once

#include <stdexcept>
#include <string>

namespace glv {

/// Base of every error raised by the library. `exit_code()` is what the CLI
/// returns when the error escapes a subcommand.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
    [[nodiscard]] virtual int exit_code() const noexcept { return 3; }
};

class ConfigError : public Error {
public:
    using Error::Error;
    [[nodiscard]] int exit_code() const noexcept override { return 2; }
};

class GridMismatch : public Error {
public:
    using Error::Error;
};

// Numerical failures (exit code 3).
class NumericalError : public Error {
public:
    using Error::Error;
};
class NonFinite : public NumericalError {
public:
    using NumericalError::NumericalError;
};
class StabilityViolation : public NumericalError {
public:
    using NumericalError::NumericalError;
};
class SolverFailure : public NumericalError {
public:
    using NumericalError::NumericalError;
};
class NoConvergence : public NumericalError {
public:
    using NumericalError::NumericalError;
};
class StepUnderflow : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// Configuration geometry problems detected by the numerical modules.
class ConfigTooClose : public ConfigError {
public:
    using ConfigError::ConfigError;
};
class ConfigTooTight : public ConfigError {
public:
    using ConfigError::ConfigError;
};
class TestFunctionInvalid : public ConfigError {
public:
    using ConfigError::ConfigError;
};
class HorizonMismatch : public ConfigError {
public:
    using ConfigError::ConfigError;
};

// Vortex tracking failures (exit code 4).
class TrackingError : public Error {
public:
    using Error::Error;
    [[nodiscard]] int exit_code() const noexcept override { return 4; }
};
class TrackingLost : public TrackingError {
public:
    using TrackingError::TrackingError;
};
class DegreeOutOfRange : public TrackingError {
public:
    using TrackingError::TrackingError;
};
class BoundaryContamination : public TrackingError {
public:
    using TrackingError::TrackingError;
};

}  // namespace glv
