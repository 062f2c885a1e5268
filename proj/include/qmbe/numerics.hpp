// Deterministic summation and adaptive Gauss-Kronrod quadrature.
#ifndef QMBE_NUMERICS_HPP
#define QMBE_NUMERICS_HPP

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace qmbe {

// Fixed-order pairwise summation. Independent of thread count and chunking,
// so reductions built on it are bitwise reproducible.
double pairwise_sum(std::span<const double> x);
std::complex<double> pairwise_sum(std::span<const std::complex<double>> x);

struct QuadratureOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-300;  // effectively off; rel_tol governs
    int max_depth = 60;
};

// Adaptive G7/K15 on [a, b]. Throws NumericalError if the requested
// tolerance cannot be met within max_depth bisections.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          const QuadratureOptions& opt = {});

// Same, with interior breakpoints (integrand may be non-smooth there).
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          std::span<const double> breakpoints,
                          const QuadratureOptions& opt = {});

} // namespace qmbe

#endif
