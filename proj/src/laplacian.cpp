#include "qmbe/laplacian.hpp"

#include <cmath>

namespace qmbe {

namespace {
constexpr double pi = 3.14159265358979323846;
}

Laplacian1D::Laplacian1D(int n, double dx, NumericsConfig::Boundary bc)
    : n_(n), dx_(dx), bc_(bc), rows_(static_cast<std::size_t>(n) * n, 0.0) {
    if (bc == NumericsConfig::Boundary::periodic) {
        // Circulant L = F^H diag(-q_m^2) F; first row by inverse DFT of the
        // symbol (real and symmetric, Nyquist included once).
        std::vector<double> first(n, 0.0);
        const double length = n * dx;
        for (int m = 0; m < n; ++m) {
            const int m_signed = (m <= n / 2) ? m : m - n;
            const double q = 2.0 * pi * m_signed / length;
            const double sym = -q * q;
            for (int j = 0; j < n; ++j)
                first[j] += sym * std::cos(2.0 * pi * m * j / n) / n;
        }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                rows_[static_cast<std::size_t>(i) * n + j] = first[(j - i + n) % n];
    } else {
        // (1, -2, 1)/dx^2 with zero boundary values
        const double w = 1.0 / (dx * dx);
        for (int i = 0; i < n; ++i) {
            rows_[static_cast<std::size_t>(i) * n + i] = -2.0 * w;
            if (i > 0) rows_[static_cast<std::size_t>(i) * n + i - 1] = w;
            if (i + 1 < n) rows_[static_cast<std::size_t>(i) * n + i + 1] = w;
        }
    }
}

void Laplacian1D::apply(std::span<const double> in, std::span<double> out) const {
    for (int i = 0; i < n_; ++i) {
        const double* r = row(i);
        double acc = 0.0;
        for (int j = 0; j < n_; ++j) acc += r[j] * in[j];
        out[i] = acc;
    }
}

void Laplacian1D::apply(std::span<const std::complex<double>> in,
                        std::span<std::complex<double>> out) const {
    for (int i = 0; i < n_; ++i) {
        const double* r = row(i);
        std::complex<double> acc{0.0, 0.0};
        for (int j = 0; j < n_; ++j) acc += r[j] * in[j];
        out[i] = acc;
    }
}

} // namespace qmbe
