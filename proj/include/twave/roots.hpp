#pragma once

#include "twave/errors.hpp"

#include <cmath>

namespace twave::roots {

struct BisectResult {
    double x;
    int iterations;
};

/// Bisection on [a, b] for a continuous f with f(a) f(b) <= 0.
///
/// Stops when the bracket is narrower than `tol`, when the midpoint can no
/// longer be distinguished from an endpoint, or when f vanishes exactly.
/// Endpoint values may be supplied to avoid evaluating f at a singular end.
template <class F>
BisectResult bisect(F&& f, double a, double b, double fa, double fb,
                    double tol = 0.0, int max_iter = 200) {
    if (fa == 0.0) return {a, 0};
    if (fb == 0.0) return {b, 0};
    if ((fa > 0.0) == (fb > 0.0))
        throw ContractError("bisect: root not bracketed");
    int it = 0;
    for (; it < max_iter; ++it) {
        const double m = 0.5 * (a + b);
        if (m <= std::fmin(a, b) || m >= std::fmax(a, b) || std::abs(b - a) <= tol) break;
        const double fm = f(m);
        if (fm == 0.0) return {m, it + 1};
        if ((fm > 0.0) == (fa > 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return {0.5 * (a + b), it};
}

template <class F>
BisectResult bisect(F&& f, double a, double b, double tol = 0.0, int max_iter = 200) {
    const double fa = f(a);
    const double fb = f(b);
    return bisect(f, a, b, fa, fb, tol, max_iter);
}

} // namespace twave::roots
