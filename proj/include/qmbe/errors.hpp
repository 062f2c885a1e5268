#ifndef QMBE_ERRORS_HPP
#define QMBE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qmbe {

// Invalid or inconsistent configuration (CLI exit code 2).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failure at runtime: NaN/Inf state, non-convergent quadrature,
// above-threshold request (CLI exit code 3).
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace qmbe

#endif
