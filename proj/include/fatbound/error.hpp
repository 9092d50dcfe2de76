#pragma once

#include <stdexcept>
#include <string>

namespace fatbound {

/// Raised when an iterative method hits its iteration cap.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double last_residual, long iterations)
        : std::runtime_error(what), last_residual_(last_residual), iterations_(iterations) {}

    double last_residual() const noexcept { return last_residual_; }
    long iterations() const noexcept { return iterations_; }

private:
    double last_residual_;
    long iterations_;
};

/// A root search was asked to bracket a root that is not there.
class NoCrossingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operation is only defined for a restricted setting (e.g. d = 2).
class UnsupportedError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace fatbound
