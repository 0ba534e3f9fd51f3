#pragma once

#include <stdexcept>
#include <string>

namespace ionshape {

// Error taxonomy mirrors the CLI exit codes: validation -> 2,
// convergence/instability/consistency -> 3, io -> 4.

class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Coincident ion positions and similar geometric degeneracies.
class SingularityError : public ValidationError {
public:
    explicit SingularityError(const std::string& msg) : ValidationError(msg) {}
};

class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& msg, double residual)
        : std::runtime_error(msg), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

// Negative Hessian eigenvalue: the linear chain is not a stable minimum.
class InstabilityError : public std::runtime_error {
public:
    InstabilityError(const std::string& msg, int mode_index)
        : std::runtime_error(msg), mode_index_(mode_index) {}
    int mode_index() const { return mode_index_; }

private:
    int mode_index_;
};

// Internal invariant violated (non-Hermitian accumulation, norm drift, ...).
class ConsistencyError : public std::runtime_error {
public:
    explicit ConsistencyError(const std::string& msg) : std::runtime_error(msg) {}
};

class DegenerateDriveError : public std::runtime_error {
public:
    explicit DegenerateDriveError(const std::string& msg) : std::runtime_error(msg) {}
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace ionshape
