#include "qmbe/integrator.hpp"
#include "qmbe/errors.hpp"
#include "qmbe/numerics.hpp"

#include <cmath>
#include <cstdio>

namespace qmbe {

double stability_limit(const DeviceParams& p, const NumericsConfig& n) {
    const Derived d = derive(p);
    const double detuning_scale = 1.0 / (d.linewidth + d.a_Omega * n.k_max * n.k_max);
    const double paraxial_scale = n.dx * n.dx * p.k0 * p.k0 / p.omega0;
    return 0.5 * std::min(detuning_scale, paraxial_scale);
}

double total_excitation(const SimState& s, double dx) {
    std::vector<double> diag(s.I.n);
    for (int i = 0; i < s.I.n; ++i) diag[i] = s.I.at(i, i).real();
    return dx * (pairwise_sum(std::span<const double>(s.N.v)) +
                 pairwise_sum(std::span<const double>(diag)));
}

Integrator::Integrator(Model model) : model_(std::move(model)) {
    engine_ = model_.numerics.engine;
    const int n_x = model_.numerics.n_x;
    const int n_k = model_.numerics.n_k;
    ws_.resize(n_x, n_k);
    stage_ = SimState(n_x, n_k);
    for (int i = 0; i < 4; ++i) {
        kN_[i].assign(n_x, 0.0);
        kC_[i].assign(static_cast<std::size_t>(n_k) * n_x * n_x, cplx{});
        kI_[i].assign(static_cast<std::size_t>(n_x) * n_x, cplx{});
    }
}

void Integrator::eval_rhs(const SimState& s, bool include_stiff,
                          std::span<double> dN, std::span<cplx> dC, std::span<cplx> dI) {
    compute_occupancies(s.N, model_, occ_);
    clamped_ += occ_.clamped;
    if (model_.numerics.freeze_carriers) {
        for (double& v : dN) v = 0.0;
    } else {
        rhs_N(s, model_, occ_, ws_, dN, engine_);
    }
    rhs_C(s, model_, occ_, ws_, dC, include_stiff, engine_);
    rhs_I(s, model_, occ_, ws_, dI, engine_);
}

namespace {

// y = a + c * b over one state block
void set_axpy(std::span<double> y, std::span<const double> a, double c,
              std::span<const double> b) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = a[i] + c * b[i];
}
void set_axpy(std::span<cplx> y, std::span<const cplx> a, double c, std::span<const cplx> b) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = a[i] + c * b[i];
}

} // namespace

void Integrator::step_rk4(SimState& s, double dt) {
    const auto nN = std::span<double>(stage_.N.v);
    const auto nC = std::span<cplx>(stage_.C.c);
    const auto nI = std::span<cplx>(stage_.I.m);

    eval_rhs(s, true, kN_[0], kC_[0], kI_[0]);

    set_axpy(nN, s.N.v, 0.5 * dt, kN_[0]);
    set_axpy(nC, s.C.c, 0.5 * dt, kC_[0]);
    set_axpy(nI, s.I.m, 0.5 * dt, kI_[0]);
    eval_rhs(stage_, true, kN_[1], kC_[1], kI_[1]);

    set_axpy(nN, s.N.v, 0.5 * dt, kN_[1]);
    set_axpy(nC, s.C.c, 0.5 * dt, kC_[1]);
    set_axpy(nI, s.I.m, 0.5 * dt, kI_[1]);
    eval_rhs(stage_, true, kN_[2], kC_[2], kI_[2]);

    set_axpy(nN, s.N.v, dt, kN_[2]);
    set_axpy(nC, s.C.c, dt, kC_[2]);
    set_axpy(nI, s.I.m, dt, kI_[2]);
    eval_rhs(stage_, true, kN_[3], kC_[3], kI_[3]);

    const double w = dt / 6.0;
    for (std::size_t i = 0; i < s.N.v.size(); ++i)
        s.N.v[i] += w * (kN_[0][i] + 2.0 * kN_[1][i] + 2.0 * kN_[2][i] + kN_[3][i]);
    for (std::size_t i = 0; i < s.C.c.size(); ++i)
        s.C.c[i] += w * (kC_[0][i] + 2.0 * kC_[1][i] + 2.0 * kC_[2][i] + kC_[3][i]);
    for (std::size_t i = 0; i < s.I.m.size(); ++i)
        s.I.m[i] += w * (kI_[0][i] + 2.0 * kI_[1][i] + 2.0 * kI_[2][i] + kI_[3][i]);
}

void Integrator::step_ifrk4(SimState& s, double dt) {
    const int n_x = model_.numerics.n_x;
    const int n_k = model_.numerics.n_k;
    if (dt != exp_dt_) {
        exp_full_.resize(n_k);
        exp_half_.resize(n_k);
        for (int mk = 0; mk < n_k; ++mk) {
            const cplx lam{model_.d.linewidth, model_.lattice.omega[mk]};
            exp_full_[mk] = std::exp(-lam * dt);
            exp_half_[mk] = std::exp(-lam * (0.5 * dt));
        }
        exp_dt_ = dt;
    }
    const std::size_t slab = static_cast<std::size_t>(n_x) * n_x;
    auto scale_C = [&](std::span<cplx> c, const std::vector<cplx>& f) {
        for (int mk = 0; mk < n_k; ++mk) {
            const cplx e = f[mk];
            cplx* p = c.data() + mk * slab;
            for (std::size_t i = 0; i < slab; ++i) p[i] *= e;
        }
    };

    const auto nN = std::span<double>(stage_.N.v);
    const auto nC = std::span<cplx>(stage_.C.c);
    const auto nI = std::span<cplx>(stage_.I.m);

    // Lawson-RK4: stages in physical variables, exponential maps between
    eval_rhs(s, false, kN_[0], kC_[0], kI_[0]);

    set_axpy(nN, s.N.v, 0.5 * dt, kN_[0]);
    set_axpy(nC, s.C.c, 0.5 * dt, kC_[0]);
    scale_C(nC, exp_half_);
    set_axpy(nI, s.I.m, 0.5 * dt, kI_[0]);
    eval_rhs(stage_, false, kN_[1], kC_[1], kI_[1]);

    set_axpy(nN, s.N.v, 0.5 * dt, kN_[1]);
    for (int mk = 0; mk < n_k; ++mk) {
        const cplx e = exp_half_[mk];
        const cplx* src = s.C.c.data() + mk * slab;
        const cplx* kk = kC_[1].data() + mk * slab;
        cplx* dst = stage_.C.c.data() + mk * slab;
        for (std::size_t i = 0; i < slab; ++i) dst[i] = e * src[i] + 0.5 * dt * kk[i];
    }
    set_axpy(nI, s.I.m, 0.5 * dt, kI_[1]);
    eval_rhs(stage_, false, kN_[2], kC_[2], kI_[2]);

    set_axpy(nN, s.N.v, dt, kN_[2]);
    for (int mk = 0; mk < n_k; ++mk) {
        const cplx ef = exp_full_[mk];
        const cplx eh = exp_half_[mk];
        const cplx* src = s.C.c.data() + mk * slab;
        const cplx* kk = kC_[2].data() + mk * slab;
        cplx* dst = stage_.C.c.data() + mk * slab;
        for (std::size_t i = 0; i < slab; ++i) dst[i] = ef * src[i] + dt * eh * kk[i];
    }
    set_axpy(nI, s.I.m, dt, kI_[2]);
    eval_rhs(stage_, false, kN_[3], kC_[3], kI_[3]);

    const double w = dt / 6.0;
    for (std::size_t i = 0; i < s.N.v.size(); ++i)
        s.N.v[i] += w * (kN_[0][i] + 2.0 * kN_[1][i] + 2.0 * kN_[2][i] + kN_[3][i]);
    for (int mk = 0; mk < n_k; ++mk) {
        const cplx ef = exp_full_[mk];
        const cplx eh = exp_half_[mk];
        cplx* dst = s.C.c.data() + mk * slab;
        const cplx* k1 = kC_[0].data() + mk * slab;
        const cplx* k2 = kC_[1].data() + mk * slab;
        const cplx* k3 = kC_[2].data() + mk * slab;
        const cplx* k4 = kC_[3].data() + mk * slab;
        for (std::size_t i = 0; i < slab; ++i)
            dst[i] = ef * dst[i] + w * (ef * k1[i] + 2.0 * eh * (k2[i] + k3[i]) + k4[i]);
    }
    for (std::size_t i = 0; i < s.I.m.size(); ++i)
        s.I.m[i] += w * (kI_[0][i] + 2.0 * kI_[1][i] + 2.0 * kI_[2][i] + kI_[3][i]);
}

void Integrator::step(SimState& s, double dt) {
    if (!(dt > 0.0)) throw NumericalError("step: dt must be > 0");
    if (model_.numerics.integrator == NumericsConfig::Integrator::rk4)
        step_rk4(s, dt);
    else
        step_ifrk4(s, dt);

    s.I.enforce_hermitian();
    if (!model_.numerics.freeze_carriers) {
        for (double& v : s.N.v)
            if (v < 0.0) {
                v = 0.0;
                ++clamped_;
            }
    }
    if (clamped_ > 0 && !warned_clamp_) {
        std::fprintf(stderr, "qmbe: warning: negative carrier density clamped to 0\n");
        warned_clamp_ = true;
    }
    s.t += dt;
    if (!s.finite())
        throw NumericalError("non-finite state detected at t = " + std::to_string(s.t));
}

} // namespace qmbe
