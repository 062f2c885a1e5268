#include "qmbe/state.hpp"

#include <cmath>

namespace qmbe {

void FieldCorrelation::enforce_hermitian() {
    for (int i = 0; i < n; ++i) {
        at(i, i) = cplx{at(i, i).real(), 0.0};
        for (int j = 0; j < i; ++j) at(j, i) = std::conj(at(i, j));
    }
}

double FieldCorrelation::hermiticity_residual() const {
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j)
            worst = std::max(worst, std::abs(at(i, j) - std::conj(at(j, i))));
    return worst;
}

double FieldCorrelation::trace_real() const {
    double tr = 0.0;
    for (int i = 0; i < n; ++i) tr += at(i, i).real();
    return tr;
}

double FieldCorrelation::min_diagonal() const {
    double v = 0.0;
    for (int i = 0; i < n; ++i) v = (i == 0) ? at(0, 0).real() : std::min(v, at(i, i).real());
    return v;
}

double FieldCorrelation::max_diagonal() const {
    double v = 0.0;
    for (int i = 0; i < n; ++i) v = (i == 0) ? at(0, 0).real() : std::max(v, at(i, i).real());
    return v;
}

bool SimState::finite() const {
    for (double x : N.v)
        if (!std::isfinite(x)) return false;
    for (const cplx& z : C.c)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    for (const cplx& z : I.m)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

} // namespace qmbe
