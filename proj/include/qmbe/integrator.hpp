// Time integration of the coupled system: classical RK4, or the Lawson
// integrating-factor variant that treats the stiff -(Gamma+kappa+i Omega(k))
// factor of C exactly.
#ifndef QMBE_INTEGRATOR_HPP
#define QMBE_INTEGRATOR_HPP

#include "qmbe/kernels.hpp"

namespace qmbe {

// dt_max = c_safe * min(1 / (Gamma + kappa + Omega(k_max)), dx^2 k0^2 / omega0),
// c_safe = 0.5. The first scale is the largest detuning on the k-lattice,
// the second the paraxial transport at the grid Nyquist mode.
double stability_limit(const DeviceParams& p, const NumericsConfig& n);

// Sum of carriers and photons, Int N dx + sum_i I(x_i, x_i) dx. Conserved
// exactly by the coupling terms; drifts only through gamma, j, D and kappa.
double total_excitation(const SimState& s, double dx);

class Integrator {
public:
    explicit Integrator(Model model);

    const Model& model() const { return model_; }
    long clamp_count() const { return clamped_; }

    // One step of the configured scheme. Re-symmetrizes I to exact
    // Hermiticity afterwards and clamps negative carrier densities.
    // Throws NumericalError if the state leaves the finite range.
    void step(SimState& s, double dt);

private:
    void eval_rhs(const SimState& s, bool include_stiff,
                  std::span<double> dN, std::span<cplx> dC, std::span<cplx> dI);
    void step_rk4(SimState& s, double dt);
    void step_ifrk4(SimState& s, double dt);

    Model model_;
    Engine engine_;
    OccupancyTables occ_;
    KernelWorkspace ws_;

    // stage storage
    SimState stage_;
    std::vector<double> kN_[4];
    std::vector<cplx> kC_[4];
    std::vector<cplx> kI_[4];
    std::vector<cplx> exp_full_;  // per-k exp(-(Gamma+kappa+i Omega) dt)
    std::vector<cplx> exp_half_;
    double exp_dt_ = -1.0;

    long clamped_ = 0;
    bool warned_clamp_ = false;
};

} // namespace qmbe

#endif
