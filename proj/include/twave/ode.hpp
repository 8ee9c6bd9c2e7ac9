#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>

namespace twave::ode {

using State = std::array<double, 2>;

struct Tolerances {
    double rel = 1e-10;
    double abs = 1e-12;
};

/// One Dormand-Prince 5(4) step of size h from (t, x) with f(x) = k1 already
/// known.  `x5` is the fifth-order solution, `err` the embedded error
/// estimate, `k7` = f(x5) (first-same-as-last).
struct StepResult {
    State x5;
    State err;
    State k7;
};

template <class F>
StepResult dopri_step(F& f, const State& x, const State& k1, double h) {
    constexpr double a21 = 1.0 / 5.0;
    constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
    constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
    constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                     a54 = -212.0 / 729.0;
    constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                     a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
    constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                     b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
    constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                     e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

    auto comb = [&](auto... terms) {
        State out = x;
        for (std::size_t c = 0; c < 2; ++c) out[c] += h * (0.0 + ... + (terms.first * (*terms.second)[c]));
        return out;
    };
    using P = std::pair<double, const State*>;

    const State k2 = f(comb(P{a21, &k1}));
    const State k3 = f(comb(P{a31, &k1}, P{a32, &k2}));
    const State k4 = f(comb(P{a41, &k1}, P{a42, &k2}, P{a43, &k3}));
    const State k5 = f(comb(P{a51, &k1}, P{a52, &k2}, P{a53, &k3}, P{a54, &k4}));
    const State k6 = f(comb(P{a61, &k1}, P{a62, &k2}, P{a63, &k3}, P{a64, &k4}, P{a65, &k5}));

    StepResult r;
    r.x5 = comb(P{b1, &k1}, P{b3, &k3}, P{b4, &k4}, P{b5, &k5}, P{b6, &k6});
    r.k7 = f(r.x5);
    for (std::size_t c = 0; c < 2; ++c)
        r.err[c] = h * (e1 * k1[c] + e3 * k3[c] + e4 * k4[c] + e5 * k5[c] + e6 * k6[c] + e7 * r.k7[c]);
    return r;
}

enum class Status { Completed, Stopped, StepUnderflow, MaxSteps };

struct SolveOptions {
    Tolerances tol{};
    double h_initial = 0.0;  // 0 selects a starting step automatically
    long max_steps = 5'000'000;
};

/// Adaptive DOPRI5(4) from t0 to t1 (either direction).
///
/// After every accepted step `observe(t0, x0, f0, t1, x1, f1)` is called with
/// the step endpoints and slopes; returning false stops the integration with
/// Status::Stopped.  The final state is written back into x.
template <class F, class Observer>
Status solve(F&& f, double t0, State& x, double t1, const SolveOptions& opt, Observer&& observe,
             double* t_reached = nullptr) {
    const double dir = t1 >= t0 ? 1.0 : -1.0;
    double t = t0;
    State k1 = f(x);
    if (t_reached) *t_reached = t;
    if (t0 == t1) return Status::Completed;

    auto scaled_norm = [&](const State& err, const State& a, const State& b) {
        double s = 0.0;
        for (std::size_t c = 0; c < 2; ++c) {
            const double sc = opt.tol.abs + opt.tol.rel * std::max(std::abs(a[c]), std::abs(b[c]));
            s += (err[c] / sc) * (err[c] / sc);
        }
        return std::sqrt(0.5 * s);
    };

    double h = opt.h_initial;
    if (h <= 0.0) {
        // Standard starting-step heuristic from the norms of x and f(x).
        const State zero{0.0, 0.0};
        const double d0 = scaled_norm(x, x, zero);
        const double d1 = scaled_norm(k1, x, zero);
        h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
        h = std::min(h, std::abs(t1 - t0));
    }

    double err_prev = 1e-4;
    for (long step = 0; step < opt.max_steps; ++step) {
        const double remaining = std::abs(t1 - t);
        if (remaining == 0.0) return Status::Completed;
        h = std::min(h, remaining);
        if (h <= 8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t)))
            return Status::StepUnderflow;

        const StepResult r = dopri_step(f, x, k1, dir * h);
        const double en = scaled_norm(r.err, x, r.x5);
        if (!std::isfinite(en)) {
            h *= 0.1;
            continue;
        }
        if (en <= 1.0) {
            const double t_new = remaining == h ? t1 : t + dir * h;
            const bool go_on = observe(t, x, k1, t_new, r.x5, r.k7);
            t = t_new;
            x = r.x5;
            k1 = r.k7;
            if (t_reached) *t_reached = t;
            if (!go_on) return Status::Stopped;
            // PI step-size controller.
            const double e = std::max(en, 1e-10);
            const double factor = 0.9 * std::pow(e, -0.7 / 5.0) * std::pow(err_prev, 0.4 / 5.0);
            h *= std::clamp(factor, 0.2, 10.0);
            err_prev = e;
        } else {
            h *= std::max(0.2, 0.9 * std::pow(en, -0.2));
        }
    }
    return Status::MaxSteps;
}

} // namespace twave::ode
