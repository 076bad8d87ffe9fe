#pragma once

#include <stdexcept>
#include <string>

namespace qthydro {

/// Raised when a physical parameter violates its positivity/range invariant.
class InvalidParameterError : public std::invalid_argument {
public:
    explicit InvalidParameterError(const std::string& what)
        : std::invalid_argument(what) {}
};

/// Raised when an operation requires a PDE type the system does not have
/// at the queried state (e.g. characteristic speed of a non-parabolic system).
class WrongTypeError : public std::runtime_error {
public:
    explicit WrongTypeError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised by the block-tridiagonal solver when a pivot block degenerates.
class SingularMatrixError : public std::runtime_error {
public:
    explicit SingularMatrixError(const std::string& what)
        : std::runtime_error(what) {}
};

/// Raised by the explicit reference solver when no admissible time step exists.
class CflViolationError : public std::runtime_error {
public:
    explicit CflViolationError(const std::string& what)
        : std::runtime_error(what) {}
};

/// Raised by the density reconstruction when the log-density integral leaves
/// the representable exp() range.
class OverflowRangeError : public std::runtime_error {
public:
    explicit OverflowRangeError(const std::string& what)
        : std::runtime_error(what) {}
};

/// Raised by the two-hump detector when the drift profile carries no signal.
class InsufficientAmplitudeError : public std::runtime_error {
public:
    explicit InsufficientAmplitudeError(const std::string& what)
        : std::runtime_error(what) {}
};

/// Configuration file parse or validation failure. `line` is 0 when the
/// failure is not tied to a specific line, `field` names the offending key.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& what, std::string field = {}, int line = 0)
        : std::runtime_error(what), field_(std::move(field)), line_(line) {}

    const std::string& field() const { return field_; }
    int line() const { return line_; }

private:
    std::string field_;
    int line_;
};

}  // namespace qthydro
