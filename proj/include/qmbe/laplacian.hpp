// Dense 1D Laplacian: spectral (periodic circulant, exact Fourier symbol)
// or 2nd-order Dirichlet stencil.
#ifndef QMBE_LAPLACIAN_HPP
#define QMBE_LAPLACIAN_HPP

#include <complex>
#include <span>
#include <vector>

#include "qmbe/params.hpp"

namespace qmbe {

class Laplacian1D {
public:
    Laplacian1D() = default;
    Laplacian1D(int n, double dx, NumericsConfig::Boundary bc);

    int size() const { return n_; }
    NumericsConfig::Boundary boundary() const { return bc_; }

    // row-major dense operator, L(i, j) = rows_[i*n + j]
    double coeff(int i, int j) const { return rows_[static_cast<std::size_t>(i) * n_ + j]; }
    const double* row(int i) const { return rows_.data() + static_cast<std::size_t>(i) * n_; }

    void apply(std::span<const double> in, std::span<double> out) const;
    void apply(std::span<const std::complex<double>> in,
               std::span<std::complex<double>> out) const;

private:
    int n_ = 0;
    double dx_ = 1.0;
    NumericsConfig::Boundary bc_ = NumericsConfig::Boundary::periodic;
    std::vector<double> rows_;
};

} // namespace qmbe

#endif
