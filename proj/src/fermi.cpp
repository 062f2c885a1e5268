#include "qmbe/fermi.hpp"
#include "qmbe/errors.hpp"

#include <cmath>
#include <limits>

namespace qmbe {

namespace {
constexpr double pi = 3.14159265358979323846;
constexpr double inf = std::numeric_limits<double>::infinity();

// ln(exp(x) - 1) without overflow/cancellation.
double log_expm1(double x) {
    if (x > 36.0) return x + std::log1p(-std::exp(-x));
    return std::log(std::expm1(x));
}

double occupation_from_nu(double omega_s, double nu, double theta_T, double kF2_scaled) {
    if (theta_T == 0.0) {
        // exact step; kF2_scaled is a_s * kF^2 = nu at T = 0
        if (kF2_scaled <= 0.0) return 0.0;  // empty band
        if (omega_s < kF2_scaled) return 1.0;
        if (omega_s > kF2_scaled) return 0.0;
        return 0.5;
    }
    const double arg = (omega_s - nu) / theta_T;
    if (arg >= 0.0) {
        const double e = std::exp(-arg);
        return e / (1.0 + e);
    }
    return 1.0 / (1.0 + std::exp(arg));
}

} // namespace

BandStructure BandStructure::from_params(const DeviceParams& p) {
    return {p.hbar / (2.0 * p.m_e), p.hbar / (2.0 * p.m_h)};
}

double omega_k(const BandStructure& b, double k) {
    return b.a_Omega() * k * k;
}

double chemical_potential_nu(double N, double a_s, double theta_T) {
    if (N < 0.0) throw NumericalError("chemical_potential_nu: N < 0");
    if (theta_T == 0.0) {
        if (N == 0.0) return -inf;  // empty band sentinel
        return 2.0 * pi * a_s * N;
    }
    if (N == 0.0) return -inf;
    return theta_T * log_expm1(2.0 * pi * a_s * N / theta_T);
}

double chemical_potential(double N, double T, double m, double hbar, double kB) {
    const double a_s = hbar / (2.0 * m);
    const double theta = kB * T / hbar;
    return hbar * chemical_potential_nu(N, a_s, theta);
}

FermiClosure make_closure(double N, const BandStructure& b, double theta_T) {
    FermiClosure c;
    c.N = N;
    c.theta_T = theta_T;
    c.nu_e = chemical_potential_nu(N, b.a_e, theta_T);
    c.nu_h = chemical_potential_nu(N, b.a_h, theta_T);
    c.kF2 = 2.0 * pi * N;
    return c;
}

double fermi_occupation(Species s, double k, const FermiClosure& c, const BandStructure& b) {
    const double a_s = (s == Species::electron) ? b.a_e : b.a_h;
    const double nu = (s == Species::electron) ? c.nu_e : c.nu_h;
    return occupation_from_nu(a_s * k * k, nu, c.theta_T, a_s * c.kF2);
}

double fermi_frequency(double N, double hbar_M) {
    return pi * hbar_M * N;
}

double inversion_factor(double k, const FermiClosure& c, const BandStructure& b) {
    return fermi_occupation(Species::electron, k, c, b) +
           fermi_occupation(Species::hole, k, c, b) - 1.0;
}

double spontaneous_product(double k, const FermiClosure& c, const BandStructure& b) {
    return fermi_occupation(Species::electron, k, c, b) *
           fermi_occupation(Species::hole, k, c, b);
}

KLattice KLattice::make(int n_k, double k_max, double a_Omega) {
    if (n_k < 1 || !(k_max > 0.0) || !(a_Omega > 0.0))
        throw ConfigError("KLattice: need n_k >= 1, k_max > 0, a_Omega > 0");
    KLattice lat;
    lat.omega_max = a_Omega * k_max * k_max;
    lat.d_omega = lat.omega_max / n_k;
    lat.quad_weight = lat.d_omega / (4.0 * pi * a_Omega);
    lat.k.resize(n_k);
    lat.omega.resize(n_k);
    for (int m = 0; m < n_k; ++m) {
        lat.omega[m] = (m + 0.5) * lat.d_omega;
        lat.k[m] = std::sqrt(lat.omega[m] / a_Omega);
    }
    return lat;
}

} // namespace qmbe
