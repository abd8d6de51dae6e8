#pragma once

#include <stdexcept>
#include <string>

namespace beamfair {

// Invalid parameters, malformed input, infeasible geometry.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Filesystem problems: missing files, unwritable output paths.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

// Fixed-point solve that did not reach the requested tolerance.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& msg, int iterations, double residual)
        : std::runtime_error(msg), iterations(iterations), residual(residual) {}

    int iterations;
    double residual;
};

}  // namespace beamfair
