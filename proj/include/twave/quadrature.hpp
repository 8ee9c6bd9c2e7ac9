#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

namespace twave::quad {

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Rule computed once per order by Newton iteration on P_n.
const GaussRule& gauss_legendre(int order);

struct Options {
    double rel_tol = 1e-12;
    double abs_tol = 1e-300;
    int order = 12;
    int max_panels = 4000;
};

template <std::size_t N>
struct Result {
    std::array<double, N> value{};
    std::array<double, N> error{};
    /// Integral of |f_c|; the scale against which rel_tol is measured.
    std::array<double, N> magnitude{};
    int panels = 0;
    bool converged = false;
};

namespace detail {

template <std::size_t N>
struct Panel {
    double a, b;
    std::array<double, N> left, right;  // rule applied to each half
    std::array<double, N> value, abs_value, error;
};

template <std::size_t N, class F>
void rule_on(const GaussRule& g, F& f, double a, double b, std::array<double, N>& val,
             std::array<double, N>& absval) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    val.fill(0.0);
    absval.fill(0.0);
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        const std::array<double, N> fx = f(mid + half * g.nodes[i]);
        for (std::size_t c = 0; c < N; ++c) {
            val[c] += g.weights[i] * fx[c];
            absval[c] += g.weights[i] * std::abs(fx[c]);
        }
    }
    for (std::size_t c = 0; c < N; ++c) {
        val[c] *= half;
        absval[c] *= half;
    }
}

} // namespace detail

/// Globally adaptive Gauss-Legendre quadrature of a vector-valued integrand
/// f: double -> std::array<double, N> over [a, b].
///
/// Each panel is integrated once whole and once as two halves; the
/// difference is its error estimate and the halves are kept.  The panel with
/// the largest error relative to its share of the tolerance is split until
/// every component satisfies sum(error_c) <= max(abs_tol, rel_tol * int |f_c|).
template <std::size_t N, class F>
Result<N> integrate(F&& f, double a, double b, const Options& opt = {}) {
    const GaussRule& g = gauss_legendre(opt.order);
    using Panel = detail::Panel<N>;

    auto make = [&](double lo, double hi, const std::array<double, N>& coarse) {
        Panel p{lo, hi, {}, {}, {}, {}, {}};
        std::array<double, N> a1, a2;
        const double m = 0.5 * (lo + hi);
        detail::rule_on<N>(g, f, lo, m, p.left, a1);
        detail::rule_on<N>(g, f, m, hi, p.right, a2);
        for (std::size_t c = 0; c < N; ++c) {
            p.value[c] = p.left[c] + p.right[c];
            p.abs_value[c] = a1[c] + a2[c];
            p.error[c] = std::abs(p.value[c] - coarse[c]);
        }
        return p;
    };

    std::array<double, N> whole, whole_abs;
    detail::rule_on<N>(g, f, a, b, whole, whole_abs);

    std::vector<Panel> panels;
    panels.push_back(make(a, b, whole));

    Result<N> r;
    auto totals = [&](std::array<double, N>& val, std::array<double, N>& err,
                      std::array<double, N>& mag) {
        val.fill(0.0);
        err.fill(0.0);
        mag.fill(0.0);
        for (const auto& p : panels)
            for (std::size_t c = 0; c < N; ++c) {
                val[c] += p.value[c];
                err[c] += p.error[c];
                mag[c] += p.abs_value[c];
            }
    };

    while (true) {
        totals(r.value, r.error, r.magnitude);
        std::array<double, N> tol;
        bool done = true;
        for (std::size_t c = 0; c < N; ++c) {
            tol[c] = std::max(opt.abs_tol, opt.rel_tol * r.magnitude[c]);
            if (r.error[c] > tol[c]) done = false;
        }
        r.panels = static_cast<int>(panels.size());
        if (done) {
            r.converged = true;
            return r;
        }
        if (static_cast<int>(panels.size()) >= opt.max_panels) return r;

        // Split the panel contributing most to the worst component.
        std::size_t worst = 0;
        double worst_score = -1.0;
        for (std::size_t i = 0; i < panels.size(); ++i) {
            double s = 0.0;
            for (std::size_t c = 0; c < N; ++c) s = std::max(s, panels[i].error[c] / tol[c]);
            if (s > worst_score) {
                worst_score = s;
                worst = i;
            }
        }
        const Panel p = panels[worst];
        const double m = 0.5 * (p.a + p.b);
        if (!(m > p.a && m < p.b)) return r;
        panels[worst] = make(p.a, m, p.left);
        panels.push_back(make(m, p.b, p.right));
    }
}

} // namespace twave::quad
