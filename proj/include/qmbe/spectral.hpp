// Closed-form and quadrature spectra: spontaneous emission factor beta,
// modal gain and spontaneous-emission spectra from adiabatic elimination,
// far-field profiles, pinning density.
#ifndef QMBE_SPECTRAL_HPP
#define QMBE_SPECTRAL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qmbe/fermi.hpp"
#include "qmbe/numerics.hpp"
#include "qmbe/params.hpp"

namespace qmbe {

struct BetaResult {
    double omega = 0.0;    // mode detuning above the band gap
    double Omega_f = 0.0;  // Fermi frequency
    double beta = 0.0;
    double beta0 = 0.0;    // beta(omega -> 0, Omega_f -> 0)
};

// beta(omega, Omega_f) = 3 sigma / (2 pi rho_L W L Omega_f)
//   * [arctan((Omega_f - omega)/(Gamma+kappa)) + arctan(omega/(Gamma+kappa))].
// Omega_f = 0 returns the continuous extension
// beta0 * (Gamma+kappa)^2 / ((Gamma+kappa)^2 + omega^2).
BetaResult beta_analytic(double omega, double Omega_f, const DeviceParams& p);

// Same quantity by adaptive quadrature of the Lorentzian overlap with the
// T = 0 emission band [0, Omega_f]; tolerance 1e-10, non-convergence is a
// hard error. Independent evaluation route used to check beta_analytic.
double beta_numeric_oracle(double omega, double Omega_f, const DeviceParams& p);

enum class SpectralBackend {
    closed_form_t0,  // T = 0 arctan forms with explicit detuning cutoff
    adaptive,        // adaptive quadrature of the k integral (any T)
    lattice          // midpoint sum on a KLattice (matches the dynamics)
};

// Cutoff handling: the absorptive tail of the gain integral extends to the
// detuning cutoff omega_cutoff = Omega(k_max), not to infinity; the result
// depends on it and the neglected tail is reported via GainResult. Pass
// INFINITY for the ideal infinite-band limit.
struct SpectralOptions {
    SpectralBackend backend = SpectralBackend::closed_form_t0;
    double omega_cutoff = 0.0;
    const KLattice* lattice = nullptr;  // required by SpectralBackend::lattice
    QuadratureOptions quad{};
};

struct GainResult {
    double value = 0.0;
    double cutoff_tail = 0.0;  // absorption neglected beyond omega_cutoff
};

// G(omega_q) = g0^2 nu0 (1/2pi) Int k dk (f_e + f_h - 1)(k; N)
//              * (Gamma+kappa) / ((Gamma+kappa)^2 + (Omega(k) - omega_q)^2).
// At T = 0 (after k dk = dOmega / (hbar M)) the closed form is
// g2/(4 pi a_Omega) [2 arctan((Omega_f-w)/s) + arctan(w/s) - arctan((cutoff-w)/s)].
GainResult modal_gain_t0(double omega_q, double N, const DeviceParams& p, double omega_cutoff);
double modal_gain(double omega_q, double N, double T, const DeviceParams& p,
                  const SpectralOptions& opt);

// S(omega_q) = 2 g0^2 nu0 (1/2pi) Int k dk f_e f_h (k; N) * Lorentzian, the
// same arctan bracket as beta at T = 0.
double spontaneous_spectrum(double omega_q, double N, double T, const DeviceParams& p,
                            const SpectralOptions& opt);

struct SpectralResult {
    std::string abscissa_name;
    std::vector<double> abscissa;
    std::vector<double> values;
    double N = 0.0;
    double T = 0.0;
    std::uint64_t params_hash = 0;
};

// Below-threshold steady state per angle: q = k0 sin(theta),
// omega_q = omega0 q^2 / (2 k0^2), F = S(omega_q) / (2 (kappa - G(omega_q))).
// Throws NumericalError naming the angle if kappa <= G for a requested mode;
// ConfigError outside the paraxial validity range |theta| <= 30 deg.
SpectralResult farfield_profile(double N, double T, const DeviceParams& p,
                                std::span<const double> angles_deg,
                                const SpectralOptions& opt);

// Smallest N with max_omega G(omega; N) = kappa, bisection to 1e-8 relative.
// Throws NumericalError("device cannot lase") if gain never reaches kappa.
double pinning_density(const DeviceParams& p, double T, const SpectralOptions& opt);

} // namespace qmbe

#endif
