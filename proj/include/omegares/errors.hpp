#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace omegares {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Geometry the selected closed form does not cover (e.g. W/H < 1 with the narrow branch off).
class UnsupportedGeometry : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A design target that cannot be realized (e.g. loading length exceeds the required electrical length).
class InfeasibleDesign : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operation called with resonator params of the wrong operating mode.
class ModeMismatch : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Malformed input text. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line = 0)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Well-formed input using a feature this library does not implement (Y/Z/H/G data, Touchstone 2.0).
class UnsupportedFormat : public ParseError {
public:
    using ParseError::ParseError;
};

class FitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NoResonance : public FitError {
public:
    using FitError::FitError;
};

class DegenerateFit : public FitError {
public:
    using FitError::FitError;
};

namespace detail {

inline void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw DomainError(std::string(name) + " must be positive and finite");
}

inline void require_non_negative(double v, const char* name) {
    if (!(v >= 0.0) || !std::isfinite(v))
        throw DomainError(std::string(name) + " must be non-negative and finite");
}

}  // namespace detail
}  // namespace omegares
