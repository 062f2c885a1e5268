// Parabolic bands, quasi-equilibrium Fermi occupations, Fermi frequency,
// and the radial k-lattice (midpoint rule on a grid uniform in Omega).
#ifndef QMBE_FERMI_HPP
#define QMBE_FERMI_HPP

#include <vector>

#include "qmbe/params.hpp"

namespace qmbe {

enum class Species { electron, hole };

// Everything is carried as frequencies: per-species dispersion
// Omega_s(k) = a_s k^2 with a_s = hbar / (2 m_s), total detuning
// Omega(k) = a_Omega k^2, chemical potentials nu_s = mu_s / hbar,
// temperature theta_T = kB T / hbar.
struct BandStructure {
    double a_e = 0.0;
    double a_h = 0.0;
    double a_Omega() const { return a_e + a_h; }

    static BandStructure from_params(const DeviceParams& p);
};

// Quasi-equilibrium closure at local density N and temperature theta_T.
// At theta_T = 0 both occupations are exact steps with the common Fermi
// wavenumber k_F = sqrt(2 pi N) (spin degeneracy 2 in 2D).
struct FermiClosure {
    double N = 0.0;
    double theta_T = 0.0;
    double nu_e = 0.0;   // mu_e / hbar; -inf sentinel for the empty band at T = 0
    double nu_h = 0.0;
    double kF2 = 0.0;    // k_F^2 = 2 pi N (used on the T = 0 path)
};

// Total detuning above the band gap, Omega(k) = a_Omega k^2.
double omega_k(const BandStructure& b, double k);

// Analytic inversion of the 2D Fermi integral with spin degeneracy 2:
// nu = theta * ln(exp(2 pi a N / theta) - 1); T -> 0 limit is 2 pi a N.
// N = 0 at theta = 0 returns -infinity (empty band sentinel).
double chemical_potential_nu(double N, double a_s, double theta_T);

// mu in energy units for mass/temperature inputs, matching
// mu = kB T ln(exp(pi hbar^2 N / (m kB T)) - 1), with T = 0 -> pi hbar^2 N / m.
double chemical_potential(double N, double T, double m, double hbar, double kB);

FermiClosure make_closure(double N, const BandStructure& b, double theta_T);

// f_s(k) in [0, 1]; exact Heaviside step at theta_T = 0 (0.5 on the edge).
double fermi_occupation(Species s, double k, const FermiClosure& c, const BandStructure& b);

// Omega_f(N) = pi hbar M N, the transition frequency at the Fermi edge.
double fermi_frequency(double N, double hbar_M);

// f_e + f_h - 1 in [-1, 1]; positive = gain, negative = absorption.
double inversion_factor(double k, const FermiClosure& c, const BandStructure& b);

// f_e * f_h in [0, 1]; the spontaneous source strength.
double spontaneous_product(double k, const FermiClosure& c, const BandStructure& b);

// Radial lattice with midpoint spacing uniform in Omega = a_Omega k^2, so
// Lorentzian integrands are resolved evenly in frequency. The isotropic 2D
// integral (1/2pi) Int k dk F(k) reduces to quad_weight * sum_m F(k_m).
struct KLattice {
    std::vector<double> k;
    std::vector<double> omega;
    double d_omega = 0.0;
    double quad_weight = 0.0;  // d_omega / (4 pi a_Omega)
    double omega_max = 0.0;    // a_Omega * k_max^2

    static KLattice make(int n_k, double k_max, double a_Omega);
};

} // namespace qmbe

#endif
