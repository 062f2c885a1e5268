#include "qmbe/spectral.hpp"
#include "qmbe/errors.hpp"

#include <algorithm>
#include <cmath>

namespace qmbe {

namespace {

constexpr double pi = 3.14159265358979323846;

double lorentz(double u, double s) { return s / (s * s + u * u); }

struct QuadSetup {
    BandStructure band;
    FermiClosure closure;
    double a_Omega;
    double s;
};

QuadSetup make_setup(double N, double T, const DeviceParams& p) {
    if (N < 0.0) throw NumericalError("carrier density must be >= 0");
    const Derived d = derive(p);
    QuadSetup q;
    q.band = BandStructure::from_params(p);
    q.closure = make_closure(N, q.band, p.kB * T / p.hbar);
    q.a_Omega = d.a_Omega;
    q.s = d.linewidth;
    return q;
}

// (1/2pi) Int k dk W(k) L(Omega(k) - w) = (1/4pi a) Int dOmega W L by
// adaptive quadrature, with breakpoints at the Fermi edge and resonance.
double omega_integral(const QuadSetup& q, double w, double cutoff,
                      const std::function<double(double)>& weight,
                      const QuadratureOptions& qopt) {
    const double Omega_f = fermi_frequency(q.closure.N, 2.0 * q.a_Omega);
    const double brk[2] = {Omega_f, w};
    auto f = [&](double Om) {
        const double k = std::sqrt(std::max(Om, 0.0) / q.a_Omega);
        return weight(k) * lorentz(Om - w, q.s);
    };
    return integrate_adaptive(f, 0.0, cutoff, std::span<const double>(brk, 2), qopt) /
           (4.0 * pi * q.a_Omega);
}

void require_cutoff(const SpectralOptions& opt) {
    if (!(opt.omega_cutoff > 0.0))
        throw ConfigError("spectral options: omega_cutoff must be > 0");
}

} // namespace

BetaResult beta_analytic(double omega, double Omega_f, const DeviceParams& p) {
    if (omega < 0.0 || Omega_f < 0.0)
        throw NumericalError("beta_analytic: omega and Omega_f must be >= 0");
    const Derived d = derive(p);
    const double s = d.linewidth;
    BetaResult r;
    r.omega = omega;
    r.Omega_f = Omega_f;
    r.beta0 = d.beta_prefactor / s;
    if (Omega_f == 0.0) {
        // Omega_f -> 0 limit: derivative of the bracket at the band edge
        r.beta = d.beta_prefactor * lorentz(omega, s);
    } else {
        const double bracket = std::atan((Omega_f - omega) / s) + std::atan(omega / s);
        r.beta = d.beta_prefactor * bracket / Omega_f;
    }
    return r;
}

double beta_numeric_oracle(double omega, double Omega_f, const DeviceParams& p) {
    if (omega < 0.0 || Omega_f < 0.0)
        throw NumericalError("beta_numeric_oracle: omega and Omega_f must be >= 0");
    const Derived d = derive(p);
    const double s = d.linewidth;
    QuadratureOptions qopt;
    qopt.rel_tol = 1e-10;
    if (Omega_f == 0.0) return d.beta_prefactor * lorentz(omega, s);
    const double brk[1] = {omega};
    const double overlap = integrate_adaptive([&](double u) { return lorentz(u - omega, s); },
                                              0.0, Omega_f, std::span<const double>(brk, 1),
                                              qopt);
    return d.beta_prefactor * overlap / Omega_f;
}

GainResult modal_gain_t0(double omega_q, double N, const DeviceParams& p,
                         double omega_cutoff) {
    const Derived d = derive(p);
    const double s = d.linewidth;
    const double Omega_f = fermi_frequency(N, d.hbar_M);
    const double scale = d.g2 / (4.0 * pi * d.a_Omega);
    const double edge = std::min(Omega_f, omega_cutoff);
    const double top = std::isinf(omega_cutoff)
                           ? 0.5 * pi
                           : std::atan((omega_cutoff - omega_q) / s);
    GainResult r;
    r.value = scale * (2.0 * std::atan((edge - omega_q) / s) + std::atan(omega_q / s) - top);
    r.cutoff_tail = std::isinf(omega_cutoff) ? 0.0 : scale * (0.5 * pi - top);
    return r;
}

double modal_gain(double omega_q, double N, double T, const DeviceParams& p,
                  const SpectralOptions& opt) {
    switch (opt.backend) {
        case SpectralBackend::closed_form_t0: {
            if (T > 0.0)
                throw ConfigError("closed_form_t0 backend requires T = 0");
            require_cutoff(opt);
            return modal_gain_t0(omega_q, N, p, opt.omega_cutoff).value;
        }
        case SpectralBackend::adaptive: {
            require_cutoff(opt);
            const QuadSetup q = make_setup(N, T, p);
            const Derived d = derive(p);
            return d.g2 * omega_integral(
                              q, omega_q, opt.omega_cutoff,
                              [&](double k) { return inversion_factor(k, q.closure, q.band); },
                              opt.quad);
        }
        case SpectralBackend::lattice: {
            if (opt.lattice == nullptr)
                throw ConfigError("lattice backend requires a KLattice");
            const QuadSetup q = make_setup(N, T, p);
            const Derived d = derive(p);
            const KLattice& lat = *opt.lattice;
            double sum = 0.0;
            for (std::size_t m = 0; m < lat.k.size(); ++m)
                sum += inversion_factor(lat.k[m], q.closure, q.band) *
                       lorentz(lat.omega[m] - omega_q, q.s);
            return d.g2 * lat.quad_weight * sum;
        }
    }
    throw ConfigError("modal_gain: unknown backend");
}

double spontaneous_spectrum(double omega_q, double N, double T, const DeviceParams& p,
                            const SpectralOptions& opt) {
    const Derived d = derive(p);
    switch (opt.backend) {
        case SpectralBackend::closed_form_t0: {
            if (T > 0.0)
                throw ConfigError("closed_form_t0 backend requires T = 0");
            require_cutoff(opt);
            const double s = d.linewidth;
            const double edge = std::min(fermi_frequency(N, d.hbar_M), opt.omega_cutoff);
            const double bracket =
                std::atan((edge - omega_q) / s) + std::atan(omega_q / s);
            return d.g2 / (2.0 * pi * d.a_Omega) * bracket;
        }
        case SpectralBackend::adaptive: {
            require_cutoff(opt);
            const QuadSetup q = make_setup(N, T, p);
            return 2.0 * d.g2 *
                   omega_integral(
                       q, omega_q, opt.omega_cutoff,
                       [&](double k) { return spontaneous_product(k, q.closure, q.band); },
                       opt.quad);
        }
        case SpectralBackend::lattice: {
            if (opt.lattice == nullptr)
                throw ConfigError("lattice backend requires a KLattice");
            const QuadSetup q = make_setup(N, T, p);
            const KLattice& lat = *opt.lattice;
            double sum = 0.0;
            for (std::size_t m = 0; m < lat.k.size(); ++m)
                sum += spontaneous_product(lat.k[m], q.closure, q.band) *
                       lorentz(lat.omega[m] - omega_q, q.s);
            return 2.0 * d.g2 * lat.quad_weight * sum;
        }
    }
    throw ConfigError("spontaneous_spectrum: unknown backend");
}

SpectralResult farfield_profile(double N, double T, const DeviceParams& p,
                                std::span<const double> angles_deg,
                                const SpectralOptions& opt) {
    SpectralResult r;
    r.abscissa_name = "theta_deg";
    r.N = N;
    r.T = T;
    const Derived d = derive(p);
    r.abscissa.reserve(angles_deg.size());
    r.values.reserve(angles_deg.size());
    for (double th : angles_deg) {
        if (std::abs(th) > 30.0 + 1e-12)
            throw ConfigError("farfield: |theta| = " + std::to_string(std::abs(th)) +
                              " deg outside paraxial validity (30 deg)");
        const double sin_th = std::sin(th * pi / 180.0);
        const double q2 = (p.k0 * sin_th) * (p.k0 * sin_th);  // even in theta exactly
        const double omega_q = d.paraxial * q2;
        const double G = modal_gain(omega_q, N, T, p, opt);
        if (G >= p.kappa)
            throw NumericalError("farfield: mode at theta = " + std::to_string(th) +
                                 " deg is above threshold (G >= kappa)");
        const double S = spontaneous_spectrum(omega_q, N, T, p, opt);
        r.abscissa.push_back(th);
        r.values.push_back(S / (2.0 * (p.kappa - G)));
    }
    return r;
}

namespace {

// max over omega of G(omega; N): coarse scan then golden-section refine.
double max_gain(double N, double T, const DeviceParams& p, const SpectralOptions& opt) {
    const Derived d = derive(p);
    const double Omega_f = fermi_frequency(N, d.hbar_M);
    const double theta = p.kB * T / p.hbar;
    double hi = Omega_f + 5.0 * theta + 3.0 * d.linewidth;
    if (!std::isinf(opt.omega_cutoff)) hi = std::min(hi, opt.omega_cutoff);
    auto G = [&](double w) { return modal_gain(w, N, T, p, opt); };

    const int n_scan = 101;
    double best_w = 0.0, best = G(0.0);
    for (int i = 1; i < n_scan; ++i) {
        const double w = hi * i / (n_scan - 1);
        const double g = G(w);
        if (g > best) {
            best = g;
            best_w = w;
        }
    }
    double a = std::max(0.0, best_w - hi / (n_scan - 1));
    double b = std::min(hi, best_w + hi / (n_scan - 1));
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = G(x1), f2 = G(x2);
    for (int it = 0; it < 80 && (b - a) > 1e-11 * (1.0 + b); ++it) {
        if (f1 < f2) {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + gr * (b - a); f2 = G(x2);
        } else {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - gr * (b - a); f1 = G(x1);
        }
    }
    return std::max(best, std::max(f1, f2));
}

} // namespace

double pinning_density(const DeviceParams& p, double T, const SpectralOptions& opt) {
    if (!(p.kappa > 0.0))
        throw ConfigError("pinning_density: kappa must be > 0");
    const Derived d = derive(p);
    // initial guess: Fermi frequency comparable to the linewidth
    double N_hi = d.linewidth / (pi * d.hbar_M);
    int doublings = 0;
    while (max_gain(N_hi, T, p, opt) < p.kappa) {
        N_hi *= 2.0;
        if (++doublings > 60)
            throw NumericalError("pinning_density: device cannot lase "
                                 "(gain never reaches kappa)");
    }
    double N_lo = 0.0;
    while ((N_hi - N_lo) > 1e-8 * N_hi) {
        const double mid = 0.5 * (N_lo + N_hi);
        if (max_gain(mid, T, p, opt) < p.kappa)
            N_lo = mid;
        else
            N_hi = mid;
    }
    return 0.5 * (N_lo + N_hi);
}

} // namespace qmbe
