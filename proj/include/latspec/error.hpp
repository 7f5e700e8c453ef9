#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace latspec {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid parameters or malformed input (CLI exit code 1).
class ConfigError : public Error {
public:
    using Error::Error;
};

// Requested materialization or eigensolve exceeds the dense limits (exit code 2).
class SizeLimitError : public Error {
public:
    using Error::Error;
};

// Scalar canonical solver or inversion failure (exit code 3).
class SolverError : public Error {
public:
    SolverError(const std::string& what, std::complex<double> z, double residual)
        : Error(what), z_(z), residual_(residual) {}

    std::complex<double> z() const noexcept { return z_; }
    double residual() const noexcept { return residual_; }

private:
    std::complex<double> z_;
    double residual_;
};

// Matrix-level canonical iteration failed or left the Kronecker solution form (exit code 4).
class OracleError : public Error {
public:
    using Error::Error;
};

} // namespace latspec
