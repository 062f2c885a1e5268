#include "qmbe/numerics.hpp"
#include "qmbe/errors.hpp"

#include <cmath>

namespace qmbe {

namespace {

template <typename T>
T pairwise_impl(std::span<const T> x) {
    if (x.size() <= 16) {
        T acc{};
        for (const T& v : x) acc += v;
        return acc;
    }
    const std::size_t half = x.size() / 2;
    return pairwise_impl(x.first(half)) + pairwise_impl(x.subspan(half));
}

// G7/K15 nodes and weights on [-1, 1] (positive half; node 0 is shared).
constexpr double k15_nodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double k15_weights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

// Gauss-7 weights for the odd K15 nodes (indices 1, 3, 5, 7).
constexpr double g7_weights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelResult {
    double integral;
    double error;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - h * k15_nodes[i]);
        fv[14 - i] = f(c + h * k15_nodes[i]);
    }
    fv[7] = f(c);

    double kron = 0.0;
    for (int i = 0; i < 7; ++i) kron += k15_weights[i] * (fv[i] + fv[14 - i]);
    kron += k15_weights[7] * fv[7];
    kron *= h;

    double gauss = 0.0;
    for (int i = 0; i < 3; ++i) gauss += g7_weights[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);
    gauss += g7_weights[3] * fv[7];
    gauss *= h;

    return {kron, std::abs(kron - gauss)};
}

double adapt(const std::function<double(double)>& f, double a, double b, double tol,
             int depth, const QuadratureOptions& opt) {
    const PanelResult r = gk15(f, a, b);
    if (r.error <= tol || r.error <= opt.abs_tol) return r.integral;
    if (depth >= opt.max_depth)
        throw NumericalError("adaptive quadrature failed to converge on [" +
                             std::to_string(a) + ", " + std::to_string(b) + "]");
    const double m = 0.5 * (a + b);
    return adapt(f, a, m, 0.5 * tol, depth + 1, opt) +
           adapt(f, m, b, 0.5 * tol, depth + 1, opt);
}

} // namespace

double pairwise_sum(std::span<const double> x) { return pairwise_impl(x); }

std::complex<double> pairwise_sum(std::span<const std::complex<double>> x) {
    return pairwise_impl(x);
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          const QuadratureOptions& opt) {
    if (a == b) return 0.0;
    const PanelResult coarse = gk15(f, a, b);
    const double scale = std::max(std::abs(coarse.integral), 1e-30);
    return adapt(f, a, b, opt.rel_tol * scale, 0, opt);
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          std::span<const double> breakpoints,
                          const QuadratureOptions& opt) {
    std::vector<double> edges;
    edges.push_back(a);
    for (double s : breakpoints)
        if (s > a && s < b) edges.push_back(s);
    edges.push_back(b);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        total += integrate_adaptive(f, edges[i], edges[i + 1], opt);
    return total;
}

} // namespace qmbe
