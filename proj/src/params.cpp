#include "qmbe/params.hpp"
#include "qmbe/errors.hpp"

#include <bit>
#include <cmath>

namespace qmbe {

namespace {
constexpr double pi = 3.14159265358979323846;

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw ConfigError(std::string(name) + " must be strictly positive");
}
} // namespace

double CurrentProfile::operator()(double x) const {
    switch (kind) {
        case Kind::none: return 0.0;
        case Kind::uniform: return amplitude;
        case Kind::gaussian: {
            const double u = (x - center) / width;
            return amplitude * std::exp(-u * u);
        }
    }
    return 0.0;
}

double DeviceParams::speed_of_light() const {
    if (c_light > 0.0) return c_light;
    return std::sqrt(eps_r) * omega0 / k0;
}

void DeviceParams::validate() const {
    require_positive(g0, "g0");
    require_positive(nu0, "nu0");
    if (!(gamma >= 0.0) || !std::isfinite(gamma))
        throw ConfigError("gamma must be >= 0");
    require_positive(Gamma, "Gamma");
    if (kappa < 0.0) throw ConfigError("kappa must be >= 0");
    if (D_amb < 0.0) throw ConfigError("D_amb must be >= 0");
    require_positive(m_e, "m_e");
    require_positive(m_h, "m_h");
    require_positive(omega0, "omega0");
    require_positive(k0, "k0");
    require_positive(W, "W");
    require_positive(L, "L");
    require_positive(sigma, "sigma");
    require_positive(eps_r, "eps_r");
    if (T < 0.0) throw ConfigError("T must be >= 0");
    require_positive(hbar, "hbar");
    require_positive(kB, "kB");
    if (j_profile.kind == CurrentProfile::Kind::gaussian)
        require_positive(j_profile.width, "j_profile.width");
}

void NumericsConfig::validate() const {
    if (n_x < 2 || !std::has_single_bit(static_cast<unsigned>(n_x)))
        throw ConfigError("n_x must be a power of two (spectral Laplacian)");
    if (n_k < 1) throw ConfigError("n_k must be >= 1");
    require_positive(dx, "dx");
    if (k_max < 0.0) throw ConfigError("k_max must be >= 0");
    if (dt < 0.0) throw ConfigError("dt must be >= 0");
    if (t_end < 0.0) throw ConfigError("t_end must be >= 0");
    require_positive(rtol, "rtol");
    if (snapshot_interval < 0.0) throw ConfigError("snapshot_interval must be >= 0");
}

double effective_mass_M(const DeviceParams& p) {
    return 1.0 / p.m_e + 1.0 / p.m_h;
}

double mode_density(const DeviceParams& p) {
    const double c = p.speed_of_light();
    return p.omega0 * p.omega0 * std::pow(p.eps_r, 1.5) / (pi * pi * c * c * c);
}

Derived derive(const DeviceParams& p) {
    Derived d;
    d.linewidth = p.Gamma + p.kappa;
    d.a_e = p.hbar / (2.0 * p.m_e);
    d.a_h = p.hbar / (2.0 * p.m_h);
    d.a_Omega = d.a_e + d.a_h;
    d.hbar_M = p.hbar * effective_mass_M(p);
    d.g2 = p.g0 * p.g0 * p.nu0;
    d.theta_T = p.kB * p.T / p.hbar;
    d.paraxial = p.omega0 / (2.0 * p.k0 * p.k0);
    d.rho_L = mode_density(p);
    d.beta_prefactor = 3.0 * p.sigma / (2.0 * pi * d.rho_L * p.W * p.L);
    return d;
}

namespace {

// Rescale all fields by tau (time) and ell (length). A quantity with
// dimensions time^a length^b maps to value * tau^-a * ell^-b.
DeviceParams rescale(const DeviceParams& p, double tau, double ell) {
    DeviceParams q = p;
    q.gamma = p.gamma * tau;
    q.Gamma = p.Gamma * tau;
    q.kappa = p.kappa * tau;
    q.omega0 = p.omega0 * tau;
    q.D_amb = p.D_amb * tau / (ell * ell);
    q.k0 = p.k0 * ell;
    q.W = p.W / ell;
    q.L = p.L / ell;
    q.sigma = p.sigma * ell;        // 1/length convention, see header
    q.g0 = p.g0 * std::sqrt(tau);
    q.nu0 = p.nu0 * tau / (ell * ell);
    // masses are kept as given; hbar absorbs the rescaling of hbar/m
    q.hbar = p.hbar * tau / (ell * ell);
    // kB rescaled so that kB*T/hbar remains a rate in the new units
    q.kB = p.kB * tau * tau / (ell * ell);
    if (p.c_light > 0.0) q.c_light = p.c_light * tau / ell;
    q.j_profile.amplitude = p.j_profile.amplitude * tau * ell * ell;
    q.j_profile.center = p.j_profile.center / ell;
    q.j_profile.width = p.j_profile.width / ell;
    return q;
}

} // namespace

DeviceParams normalize(const DeviceParams& p) {
    p.validate();
    const double tau = 1.0 / (p.Gamma + p.kappa);
    const double ell = std::sqrt(p.omega0 * tau) / (p.k0 * std::sqrt(2.0));
    DeviceParams q = rescale(p, tau, ell);
    q.time_scale = p.time_scale * tau;
    q.length_scale = p.length_scale * ell;
    return q;
}

DeviceParams denormalize(const DeviceParams& p) {
    DeviceParams q = rescale(p, 1.0 / p.time_scale, 1.0 / p.length_scale);
    q.time_scale = 1.0;
    q.length_scale = 1.0;
    return q;
}

} // namespace qmbe
