// Simulation state: carrier density N(x), field-dipole correlation
// C(x; x', k), field-field correlation I(x; x').
#ifndef QMBE_STATE_HPP
#define QMBE_STATE_HPP

#include <complex>
#include <span>
#include <vector>

namespace qmbe {

using cplx = std::complex<double>;

struct CarrierField {
    std::vector<double> v;

    explicit CarrierField(int n_x = 0, double value = 0.0)
        : v(static_cast<std::size_t>(n_x), value) {}
    int size() const { return static_cast<int>(v.size()); }
};

// Hermitian single-photon density matrix I(x_i, x_j); the diagonal is the
// local intensity. enforce_hermitian() mirrors the lower triangle so the
// invariant I(i,j) == conj(I(j,i)) holds bitwise.
struct FieldCorrelation {
    int n = 0;
    std::vector<cplx> m;

    explicit FieldCorrelation(int n_x = 0)
        : n(n_x), m(static_cast<std::size_t>(n_x) * n_x, cplx{0.0, 0.0}) {}

    cplx& at(int i, int j) { return m[static_cast<std::size_t>(i) * n + j]; }
    const cplx& at(int i, int j) const { return m[static_cast<std::size_t>(i) * n + j]; }

    void enforce_hermitian();
    double hermiticity_residual() const;  // max |I(i,j) - conj(I(j,i))|
    double trace_real() const;
    double min_diagonal() const;
    double max_diagonal() const;
};

// C(k-slab; field coordinate x; dipole coordinate x'), k-major layout.
struct DipoleCorrelation {
    int n_x = 0;
    int n_k = 0;
    std::vector<cplx> c;

    DipoleCorrelation(int nx = 0, int nk = 0)
        : n_x(nx), n_k(nk),
          c(static_cast<std::size_t>(nk) * nx * nx, cplx{0.0, 0.0}) {}

    cplx* slab(int k) { return c.data() + static_cast<std::size_t>(k) * n_x * n_x; }
    const cplx* slab(int k) const { return c.data() + static_cast<std::size_t>(k) * n_x * n_x; }
    cplx& at(int k, int xf, int xd) {
        return c[(static_cast<std::size_t>(k) * n_x + xf) * n_x + xd];
    }
    const cplx& at(int k, int xf, int xd) const {
        return c[(static_cast<std::size_t>(k) * n_x + xf) * n_x + xd];
    }
};

struct SimState {
    double t = 0.0;
    CarrierField N;
    DipoleCorrelation C;
    FieldCorrelation I;

    SimState() = default;
    SimState(int n_x, int n_k) : N(n_x), C(n_x, n_k), I(n_x) {}

    bool finite() const;  // false if any entry is NaN/Inf
};

} // namespace qmbe

#endif
