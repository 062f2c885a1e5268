// Right-hand sides of the coupled carrier / correlation equations on the
// 1D lateral grid. Every kernel has a serial reference path and an OpenMP
// path; both loop in the same fixed order per output element, so results
// are bitwise identical regardless of engine or thread count.
#ifndef QMBE_KERNELS_HPP
#define QMBE_KERNELS_HPP

#include <span>
#include <vector>

#include "qmbe/fermi.hpp"
#include "qmbe/laplacian.hpp"
#include "qmbe/params.hpp"
#include "qmbe/state.hpp"

namespace qmbe {

using Engine = NumericsConfig::Engine;

// Prepared run context: parameters, band structure, k-lattice, grid operator
// and the sampled injection profile. Immutable during integration; shared
// read-only by all workers.
struct Model {
    DeviceParams params;
    NumericsConfig numerics;
    Derived d;
    BandStructure band;
    KLattice lattice;
    Laplacian1D laplacian;
    std::vector<double> x;  // grid coordinates, centered on 0
    std::vector<double> j;  // injection profile sampled on the grid
    double g = 0.0;         // g0 sqrt(nu0)

    static Model make(const DeviceParams& p, const NumericsConfig& n);
};

// Quasi-equilibrium factors per (grid point, lattice point). Negative
// carrier densities are clamped to zero before evaluating the closures;
// the clamp count is reported so the integrator can log it.
struct OccupancyTables {
    std::vector<double> inversion;    // f_e + f_h - 1, [x * n_k + m]
    std::vector<double> spontaneous;  // f_e * f_h
    long clamped = 0;

    void resize(int n_x, int n_k);
};

void compute_occupancies(const CarrierField& N, const Model& m, OccupancyTables& occ);

// Scratch for the per-slab Laplacian of C and the transport products of I.
struct KernelWorkspace {
    std::vector<cplx> lap_C;   // n_k * n_x * n_x
    std::vector<cplx> LI;      // n_x * n_x
    std::vector<cplx> IL;      // n_x * n_x
    std::vector<double> lap_N; // n_x

    void resize(int n_x, int n_k);
};

// dN/dt = -gamma N + D_amb N'' + j + i g (1/2pi) Int k dk (C - C*) on the
// diagonal; the coupling term equals -2 g <Im C>.
void rhs_N(const SimState& s, const Model& m, const OccupancyTables& occ,
           KernelWorkspace& ws, std::span<double> out, Engine eng);

// dC/dt = -(Gamma + kappa + i Omega(k) + i p d^2/dx_field^2) C
//         + i g (f_e + f_h - 1)(k; N(x')) I(x, x')
//         + i g delta_grid(x - x') f_e f_h(k; N(x)),   p = omega0 / (2 k0^2).
// include_stiff = false omits the -(Gamma + kappa + i Omega(k)) C part
// (integrating-factor scheme handles it exactly).
void rhs_C(const SimState& s, const Model& m, const OccupancyTables& occ,
           KernelWorkspace& ws, std::span<cplx> out, bool include_stiff, Engine eng);

// dI/dt = -i p (d^2/dx^2 - d^2/dx'^2) I - 2 kappa I
//         - i g (1/2pi) Int k dk [C(x; x', k) - C*(x'; x, k)].
void rhs_I(const SimState& s, const Model& m, const OccupancyTables& occ,
           KernelWorkspace& ws, std::span<cplx> out, Engine eng);

} // namespace qmbe

#endif
