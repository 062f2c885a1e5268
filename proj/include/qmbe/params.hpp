// Physical and numerical parameters, unit normalization, derived constants.
#ifndef QMBE_PARAMS_HPP
#define QMBE_PARAMS_HPP

#include <string>

namespace qmbe {

// Lateral injection current profile j(x). "none" means j = 0 everywhere.
struct CurrentProfile {
    enum class Kind { none, uniform, gaussian };
    Kind kind = Kind::none;
    double amplitude = 0.0;  // carriers / (area * time)
    double center = 0.0;     // length
    double width = 1.0;      // length (gaussian 1/e half-width)

    double operator()(double x) const;
};

// All device constants in one coherent unit system. Any system works as long
// as hbar and kB are given in the same units (hbar = kB = 1 for normalized
// theorist units, SI values for SI input). The speed of light only enters
// the mode density rho_L; when c_light <= 0 it is derived from the material
// dispersion as sqrt(eps_r) * omega0 / k0.
struct DeviceParams {
    double g0 = 0.0;      // field-dipole coupling, frequency^(1/2)
    double nu0 = 1.0;     // mode volume normalization (opaque scale)
    double gamma = 0.0;   // nonradiative/background recombination rate
    double Gamma = 0.0;   // dipole dephasing rate (k-independent)
    double kappa = 0.0;   // cavity loss rate
    double D_amb = 0.0;   // ambipolar diffusion constant, length^2 * frequency
    double m_e = 0.0;     // effective electron mass
    double m_h = 0.0;     // effective hole mass
    double omega0 = 0.0;  // band-gap frequency
    double k0 = 0.0;      // central wavenumber, 1/length
    double W = 1.0;       // device width
    double L = 1.0;       // device length
    double sigma = 1.0;   // emission cross-section prefactor (opaque scale)
    double eps_r = 1.0;   // relative permittivity
    double T = 0.0;       // carrier temperature (energy through kB*T; 0 allowed)
    CurrentProfile j_profile;

    double hbar = 1.0;        // Planck constant / 2pi in these units
    double kB = 1.0;          // Boltzmann constant in these units
    double c_light = -1.0;    // speed of light; <= 0 -> sqrt(eps_r)*omega0/k0

    // Conversion bookkeeping filled in by normalize(): seconds-per-time-unit
    // and meters-per-length-unit relative to the original inputs.
    double time_scale = 1.0;
    double length_scale = 1.0;

    double speed_of_light() const;

    // Throws ConfigError on nonpositive rates/masses/lengths or T < 0.
    void validate() const;
};

struct NumericsConfig {
    int n_x = 32;            // lateral grid points (power of two)
    int n_k = 24;            // radial k-lattice points
    double dx = 1.0;         // grid spacing
    double k_max = 0.0;      // radial cutoff; Omega(k_max) is the detuning cutoff
    double dt = 0.0;         // time step; 0 -> use stability_limit
    double t_end = 0.0;      // integration horizon
    double rtol = 1e-8;      // diagnostic tolerance

    enum class Boundary { periodic, dirichlet };
    enum class Integrator { rk4, ifrk4 };
    enum class Engine { serial, parallel };
    Boundary boundary = Boundary::periodic;
    Integrator integrator = Integrator::rk4;
    Engine engine = Engine::parallel;

    bool freeze_carriers = false;   // hold N(x) fixed (spectral cross-checks)
    double snapshot_interval = 0.0; // 0 -> no snapshots
    bool snapshot_full_correlation = false;

    void validate() const;
};

// Derived constants used throughout the physics (all plain frequencies,
// lengths and their combinations; no hbar appears downstream of this).
struct Derived {
    double linewidth = 0.0;   // Gamma + kappa, the only combination in Eq.-level spectra
    double a_e = 0.0;         // hbar / (2 m_e), frequency * length^2
    double a_h = 0.0;         // hbar / (2 m_h)
    double a_Omega = 0.0;     // a_e + a_h; Omega(k) = a_Omega k^2
    double hbar_M = 0.0;      // hbar * (1/m_e + 1/m_h) = 2 a_Omega
    double g2 = 0.0;          // (g0 sqrt(nu0))^2, the squared coupling
    double theta_T = 0.0;     // kB T / hbar, thermal frequency
    double paraxial = 0.0;    // omega0 / (2 k0^2)
    double rho_L = 0.0;       // density of light field modes at the band edge
    double beta_prefactor = 0.0; // 3 sigma / (2 pi rho_L W L)
};

// M = 1/m_e + 1/m_h (inverse reduced-mass combination).
double effective_mass_M(const DeviceParams& p);

// rho_L = omega0^2 eps_r^(3/2) / (pi^2 c^3).
double mode_density(const DeviceParams& p);

Derived derive(const DeviceParams& p);

// Rescales to internal units with Gamma + kappa = 1 and unit diffraction
// length sqrt(omega0 * t_unit) / (k0 sqrt(2)) = 1; conversion factors are
// recorded in time_scale / length_scale. sigma is carried with 1/length
// scaling so that beta is invariant under normalization (Eq.-4 prefactor
// combination sigma / (rho_L W L Omega_f) is dimensionless only then).
DeviceParams normalize(const DeviceParams& p);

// Inverse of normalize(); restores the original unit system.
DeviceParams denormalize(const DeviceParams& p);

} // namespace qmbe

#endif
