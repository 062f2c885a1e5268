#include "qmbe/kernels.hpp"

#include <cmath>

namespace qmbe {

Model Model::make(const DeviceParams& p, const NumericsConfig& n) {
    p.validate();
    n.validate();
    Model m;
    m.params = p;
    m.numerics = n;
    m.d = derive(p);
    m.band = BandStructure::from_params(p);
    m.lattice = KLattice::make(n.n_k, n.k_max, m.d.a_Omega);
    m.laplacian = Laplacian1D(n.n_x, n.dx, n.boundary);
    m.x.resize(n.n_x);
    m.j.resize(n.n_x);
    for (int i = 0; i < n.n_x; ++i) {
        m.x[i] = (i - n.n_x / 2) * n.dx;
        m.j[i] = p.j_profile(m.x[i]);
    }
    m.g = p.g0 * std::sqrt(p.nu0);
    return m;
}

void OccupancyTables::resize(int n_x, int n_k) {
    inversion.assign(static_cast<std::size_t>(n_x) * n_k, 0.0);
    spontaneous.assign(static_cast<std::size_t>(n_x) * n_k, 0.0);
    clamped = 0;
}

void KernelWorkspace::resize(int n_x, int n_k) {
    lap_C.assign(static_cast<std::size_t>(n_k) * n_x * n_x, cplx{});
    LI.assign(static_cast<std::size_t>(n_x) * n_x, cplx{});
    IL.assign(static_cast<std::size_t>(n_x) * n_x, cplx{});
    lap_N.assign(static_cast<std::size_t>(n_x), 0.0);
}

void compute_occupancies(const CarrierField& N, const Model& m, OccupancyTables& occ) {
    const int n_x = N.size();
    const int n_k = static_cast<int>(m.lattice.k.size());
    occ.resize(n_x, n_k);
    for (int ix = 0; ix < n_x; ++ix) {
        double Nc = N.v[ix];
        if (Nc < 0.0) {
            Nc = 0.0;
            ++occ.clamped;
        }
        const FermiClosure cl = make_closure(Nc, m.band, m.d.theta_T);
        for (int mk = 0; mk < n_k; ++mk) {
            const double fe = fermi_occupation(Species::electron, m.lattice.k[mk], cl, m.band);
            const double fh = fermi_occupation(Species::hole, m.lattice.k[mk], cl, m.band);
            occ.inversion[static_cast<std::size_t>(ix) * n_k + mk] = fe + fh - 1.0;
            occ.spontaneous[static_cast<std::size_t>(ix) * n_k + mk] = fe * fh;
        }
    }
}

void rhs_N(const SimState& s, const Model& m, const OccupancyTables&,
           KernelWorkspace& ws, std::span<double> out, Engine eng) {
    const int n_x = s.N.size();
    const int n_k = s.C.n_k;
    const double w = m.lattice.quad_weight;
    const double gamma = m.params.gamma;
    const double D = m.params.D_amb;

    m.laplacian.apply(std::span<const double>(s.N.v), std::span<double>(ws.lap_N));

    auto worker = [&](int ix) {
        // fixed-order k sum per grid point
        double im_sum = 0.0;
        for (int mk = 0; mk < n_k; ++mk) im_sum += s.C.at(mk, ix, ix).imag();
        out[ix] = -gamma * s.N.v[ix] + D * ws.lap_N[ix] + m.j[ix] - 2.0 * m.g * w * im_sum;
    };

    if (eng == Engine::parallel) {
#pragma omp parallel for schedule(static)
        for (int ix = 0; ix < n_x; ++ix) worker(ix);
    } else {
        for (int ix = 0; ix < n_x; ++ix) worker(ix);
    }
}

void rhs_C(const SimState& s, const Model& m, const OccupancyTables& occ,
           KernelWorkspace& ws, std::span<cplx> out, bool include_stiff, Engine eng) {
    const int n_x = s.C.n_x;
    const int n_k = s.C.n_k;
    const double p = m.d.paraxial;
    const double damp = m.d.linewidth;  // Gamma + kappa_C with kappa_C = kappa
    const double src_w = 1.0 / m.numerics.dx;  // delta_grid at coincident points
    const cplx ig{0.0, m.g};

    auto slab_worker = [&](int mk) {
        const cplx* Ck = s.C.slab(mk);
        cplx* lap = ws.lap_C.data() + static_cast<std::size_t>(mk) * n_x * n_x;
        // Laplacian on the field coordinate: lap = L * C_k
        for (int i = 0; i < n_x; ++i) {
            const double* Lr = m.laplacian.row(i);
            cplx* lrow = lap + static_cast<std::size_t>(i) * n_x;
            for (int j = 0; j < n_x; ++j) lrow[j] = cplx{0.0, 0.0};
            for (int y = 0; y < n_x; ++y) {
                const double lw = Lr[y];
                if (lw == 0.0) continue;
                const cplx* crow = Ck + static_cast<std::size_t>(y) * n_x;
                for (int j = 0; j < n_x; ++j) lrow[j] += lw * crow[j];
            }
        }
        const cplx stiff{-damp, -m.lattice.omega[mk]};  // -(Gamma+kappa) - i Omega_k
        cplx* orow = out.data() + static_cast<std::size_t>(mk) * n_x * n_x;
        for (int i = 0; i < n_x; ++i) {
            for (int j = 0; j < n_x; ++j) {
                const std::size_t idx = static_cast<std::size_t>(i) * n_x + j;
                cplx v = cplx{0.0, -p} * lap[idx];  // -i p (d^2/dx_field^2) C
                v += ig * occ.inversion[static_cast<std::size_t>(j) * n_k + mk] * s.I.at(i, j);
                if (i == j)
                    v += ig * occ.spontaneous[static_cast<std::size_t>(i) * n_k + mk] * src_w;
                if (include_stiff) v += stiff * Ck[idx];
                orow[idx] = v;
            }
        }
    };

    if (eng == Engine::parallel) {
#pragma omp parallel for schedule(static)
        for (int mk = 0; mk < n_k; ++mk) slab_worker(mk);
    } else {
        for (int mk = 0; mk < n_k; ++mk) slab_worker(mk);
    }
}

void rhs_I(const SimState& s, const Model& m, const OccupancyTables&,
           KernelWorkspace& ws, std::span<cplx> out, Engine eng) {
    const int n_x = s.I.n;
    const int n_k = s.C.n_k;
    const double p = m.d.paraxial;
    const double kappa = m.params.kappa;
    const double w = m.lattice.quad_weight;

    // transport products L*I and I*L (L symmetric)
    auto row_products = [&](int i) {
        cplx* li = ws.LI.data() + static_cast<std::size_t>(i) * n_x;
        cplx* il = ws.IL.data() + static_cast<std::size_t>(i) * n_x;
        for (int j = 0; j < n_x; ++j) li[j] = il[j] = cplx{0.0, 0.0};
        const double* Lr = m.laplacian.row(i);
        for (int y = 0; y < n_x; ++y) {
            const double lw = Lr[y];
            if (lw != 0.0) {
                const cplx* Iy = &s.I.at(y, 0);
                for (int j = 0; j < n_x; ++j) li[j] += lw * Iy[j];
            }
            const cplx iv = s.I.at(i, y);
            const double* Ly = m.laplacian.row(y);
            for (int j = 0; j < n_x; ++j) il[j] += iv * Ly[j];
        }
    };

    auto row_combine = [&](int i) {
        cplx* orow = out.data() + static_cast<std::size_t>(i) * n_x;
        const cplx* li = ws.LI.data() + static_cast<std::size_t>(i) * n_x;
        const cplx* il = ws.IL.data() + static_cast<std::size_t>(i) * n_x;
        for (int j = 0; j < n_x; ++j) {
            cplx ksum{0.0, 0.0};
            for (int mk = 0; mk < n_k; ++mk)
                ksum += s.C.at(mk, i, j) - std::conj(s.C.at(mk, j, i));
            orow[j] = cplx{0.0, -p} * (li[j] - il[j]) - 2.0 * kappa * s.I.at(i, j) +
                      cplx{0.0, -m.g * w} * ksum;
        }
    };

    if (eng == Engine::parallel) {
#pragma omp parallel for schedule(static)
        for (int i = 0; i < n_x; ++i) row_products(i);
#pragma omp parallel for schedule(static)
        for (int i = 0; i < n_x; ++i) row_combine(i);
    } else {
        for (int i = 0; i < n_x; ++i) row_products(i);
        for (int i = 0; i < n_x; ++i) row_combine(i);
    }
}

} // namespace qmbe
