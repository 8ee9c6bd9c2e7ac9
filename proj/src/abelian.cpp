#include "twave/abelian.hpp"

#include "twave/errors.hpp"
#include "twave/rational.hpp"
#include "twave/roots.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace twave {

const char* const kNoGuaranteeWarning = "monotonicity not guaranteed";
const char* const kIdenticallyZeroWarning = "An identically zero; no limit cycles";

namespace {

// h - Phi(u) = (u - u_minus)(u - u_plus) q(u) with q quadratic; on the orbit
// R(u) = -q(u) > 0.  Under u = u_minus + L sin^2(theta) the square-root
// endpoint factors cancel against du, leaving a smooth integrand in theta.
struct OrbitIntegrand {
    double u_minus;
    double length;
    double q2, q1, q0;

    OrbitIntegrand(const SystemParams& p, double h, double um, double up)
        : u_minus(um), length(up - um) {
        const double a4 = 0.25 * p.beta;
        const double a3 = -p.beta * (p.k + p.u0) / 3.0;
        const double a2 = 0.5 * p.beta * p.k * p.u0;
        const double s = um + up;
        const double prod = um * up;
        q2 = a4;
        q1 = a3 + s * q2;
        q0 = a2 + s * q1 - prod * q2;
        (void)h;
    }

    double u_at(double theta) const {
        const double sn = std::sin(theta);
        return u_minus + length * sn * sn;
    }

    double root_r(double u) const { return std::sqrt(std::max(0.0, -((q2 * u + q1) * u + q0))); }
};

struct Moments {
    double A0;
    double Am;
};

void check_quadrature(bool converged, const char* what, double best) {
    if (!converged)
        throw AccuracyError(std::string(what) + ": quadrature did not converge", best);
}

// A_0 and A_m = 2 int u^m sqrt(2 (h - Phi)) du between the turning points,
// i.e. 4 sqrt(2) L^2 int_0^{pi/2} u^m sin^2 cos^2 sqrt(R(u)) dtheta.
Moments moments(const SystemParams& p, double h, double um, double up, int m,
                const AbelianOptions& opt) {
    const OrbitIntegrand orbit(p, h, um, up);
    auto f = [&](double theta) {
        const double sn = std::sin(theta);
        const double cs = std::cos(theta);
        const double u = orbit.u_minus + orbit.length * sn * sn;
        const double base = sn * sn * cs * cs * orbit.root_r(u);
        return std::array<double, 2>{base, base * ipow(u, m)};
    };
    const auto r = quad::integrate<2>(f, 0.0, 0.5 * std::numbers::pi, opt.quadrature);
    const double scale = 4.0 * std::numbers::sqrt2 * orbit.length * orbit.length;
    check_quadrature(r.converged, "abelian integral", scale * r.value[1]);
    return {scale * r.value[0], scale * r.value[1]};
}

} // namespace

OrbitGeometry turning_points(const SystemParams& p, const Annulus& a, double h,
                             const AbelianOptions& opt) {
    if (!a.h.contains(h))
        throw DomainError("energy " + std::to_string(h) + " outside the annulus interval");
    if (h - a.h.lo < opt.degenerate_gap || a.h.hi - h < opt.degenerate_gap)
        throw DegenerateOrbit("energy " + std::to_string(h) + " too close to an annulus endpoint");
    const double c = a.center_u;
    auto g = [&](double u) { return phi(p, u) - h; };
    // Phi decreases on (alpha, c) and increases on (c, B); endpoint values are
    // known exactly: Phi(alpha) = Phi(B) = h2, Phi(c) = h1.
    const double hi_gap = a.h.hi - h;
    const double lo_gap = a.h.lo - h;
    const double um = roots::bisect(g, a.u_range.lo, c, hi_gap, lo_gap).x;
    const double up = roots::bisect(g, c, a.u_range.hi, lo_gap, hi_gap).x;
    return {h, um, up};
}

double abelian_A(const SystemParams& p, int m, double h, const AbelianOptions& opt) {
    if (m < 0) throw ContractError("abelian_A: m must be nonnegative");
    const Annulus a = annulus(p);
    const OrbitGeometry geo = turning_points(p, a, h, opt);
    return moments(p, h, geo.u_minus, geo.u_plus, m, opt).Am;
}

AbelianSample ratio_G(const SystemParams& p, const Annulus& a, int n, double h,
                      const AbelianOptions& opt) {
    const OrbitGeometry geo = turning_points(p, a, h, opt);
    const Moments mo = moments(p, h, geo.u_minus, geo.u_plus, n, opt);
    return {h, mo.A0, mo.Am, mo.Am / mo.A0};
}

AbelianSample ratio_G(const SystemParams& p, int n, double h, const AbelianOptions& opt) {
    return ratio_G(p, annulus(p), n, h, opt);
}

double orbit_period(const SystemParams& p, const Annulus& a, double h,
                    const AbelianOptions& opt) {
    const OrbitGeometry geo = turning_points(p, a, h, opt);
    const OrbitIntegrand orbit(p, h, geo.u_minus, geo.u_plus);
    // T = 2 int du / sqrt(2 (h - Phi)) = 2 sqrt(2) int_0^{pi/2} dtheta / sqrt(R(u)).
    auto f = [&](double theta) {
        return std::array<double, 1>{1.0 / orbit.root_r(orbit.u_at(theta))};
    };
    const auto r = quad::integrate<1>(f, 0.0, 0.5 * std::numbers::pi, opt.quadrature);
    const double period = 2.0 * std::numbers::sqrt2 * r.value[0];
    check_quadrature(r.converged, "orbit period", period);
    return period;
}

double abelian_A_boundary(const SystemParams& p, int m, const AbelianOptions& opt) {
    const Annulus a = annulus(p);
    return moments(p, a.h.hi, a.u_range.lo, a.u_range.hi, m, opt).Am;
}

BoundaryLimits boundary_limits(const SystemParams& p, int n, const AbelianOptions& opt) {
    const Annulus a = annulus(p);
    const double k_center = ipow(a.center_u, n);

    constexpr int first = 10;
    constexpr int last = 16;
    std::vector<double> g;
    for (int j = first; j <= last; ++j) {
        const double h = a.h.hi - a.h.width() * std::ldexp(1.0, -j);
        g.push_back(ratio_G(p, a, n, h, opt).Gn);
    }
    // G = K + c1 d log d + c2 d + O(d^2 log d) near the boundary orbit; two
    // halving-Richardson passes cancel the d log d and d terms.
    std::vector<double> r1;
    for (std::size_t i = 0; i + 1 < g.size(); ++i) r1.push_back(2.0 * g[i + 1] - g[i]);
    std::vector<double> r2;
    for (std::size_t i = 0; i + 1 < r1.size(); ++i) r2.push_back(2.0 * r1[i + 1] - r1[i]);

    const double best = r2.back();
    const double prev = r2[r2.size() - 2];
    if (std::abs(best - prev) > 1e-4 * std::max(1.0, std::abs(best)))
        throw AccuracyError("boundary limit extrapolation did not stabilize", best);
    return {k_center, best};
}

RatioInterval ratio_interval(const SystemParams& p, int n, const AbelianOptions& opt) {
    const Annulus a = annulus(p);
    RatioInterval out;
    out.n = n;
    if (a.regime == Regime::Symmetric && n % 2 == 1) {
        out.empty = true;
        out.warnings.push_back(kIdenticallyZeroWarning);
        return out;
    }
    const BoundaryLimits lim = boundary_limits(p, n, opt);
    out.K_center = lim.K_center;
    out.K_boundary = lim.K_boundary;
    double g_lo = std::min(lim.K_center, lim.K_boundary);
    double g_hi = std::max(lim.K_center, lim.K_boundary);
    if (!monotonicity_guaranteed(a.regime, n)) {
        out.warnings.push_back(kNoGuaranteeWarning);
        const MonotonicityReport scan = monotonicity_scan(p, n, 200, opt);
        g_lo = std::min(g_lo, scan.g_min);
        g_hi = std::max(g_hi, scan.g_max);
        if (!scan.strictly_monotone)
            out.warnings.push_back("G_n not monotone on the scan grid; zeros of A(h) may not be unique");
    }
    out.lower = -g_hi;
    out.upper = -g_lo;
    return out;
}

double solve_h_for_ratio(const SystemParams& p, int n, double ratio, const AbelianOptions& opt) {
    const Annulus a = annulus(p);
    if (a.regime == Regime::Symmetric && n % 2 == 1)
        throw NoZero("A_n is identically zero; A(h) has no zero");
    const BoundaryLimits lim = boundary_limits(p, n, opt);
    const double target = -ratio;
    const double g_lo = std::min(lim.K_center, lim.K_boundary);
    const double g_hi = std::max(lim.K_center, lim.K_boundary);
    if (!(g_lo < target && target < g_hi))
        throw NoZero("ratio " + std::to_string(ratio) + " outside the admissible interval");

    // Bisection on G_n(h) + ratio with the endpoint limits standing in for the
    // (degenerate) endpoint evaluations.
    double lo = a.h.lo;
    double hi = a.h.hi;
    double f_lo = lim.K_center - target;
    const double guard = 2.0 * opt.degenerate_gap;
    for (int it = 0; it < 200; ++it) {
        const double m = 0.5 * (lo + hi);
        if (!(m > lo && m < hi)) break;
        if (m - a.h.lo < guard || a.h.hi - m < guard) return m;
        const double f_m = ratio_G(p, a, n, m, opt).Gn - target;
        if (f_m == 0.0) return m;
        if ((f_m > 0.0) == (f_lo > 0.0)) {
            lo = m;
            f_lo = f_m;
        } else {
            hi = m;
        }
    }
    return 0.5 * (lo + hi);
}

std::vector<double> scan_grid(const Annulus& a, int size, double margin) {
    if (size < 2) throw ContractError("scan grid needs at least two points");
    const int near_center = size / 2;
    const int near_boundary = size - near_center;
    const double w = a.h.width();
    std::vector<double> h;
    h.reserve(static_cast<std::size_t>(size));
    for (int i = 0; i < near_center; ++i) {
        const double x = margin + (0.5 - margin) * i / near_center;
        h.push_back(a.h.lo + w * x);
    }
    // Distances 2^-t to the boundary, t evenly spaced from 1 to log2(1/margin).
    const double t_max = std::log2(1.0 / margin);
    for (int i = 0; i < near_boundary; ++i) {
        const double t = near_boundary == 1 ? 1.0 : 1.0 + (t_max - 1.0) * i / (near_boundary - 1);
        h.push_back(a.h.hi - w * std::exp2(-t));
    }
    return h;
}

MonotonicityReport assess_monotonicity(const Annulus& a, int n, std::vector<AbelianSample> samples) {
    if (samples.empty()) throw ContractError("monotonicity verdict needs at least one sample");
    MonotonicityReport rep;
    rep.n = n;
    rep.guaranteed = monotonicity_guaranteed(a.regime, n);
    if (a.regime == Regime::PosWide) rep.warnings.push_back(kNoGuaranteeWarning);
    rep.samples = std::move(samples);

    rep.identically_zero = std::all_of(rep.samples.begin(), rep.samples.end(),
                                       [](const AbelianSample& s) { return std::abs(s.An) <= 1e-10 * s.A0; });
    rep.g_min = rep.g_max = rep.samples.front().Gn;
    for (const auto& s : rep.samples) {
        rep.g_min = std::min(rep.g_min, s.Gn);
        rep.g_max = std::max(rep.g_max, s.Gn);
    }
    if (rep.identically_zero) {
        rep.warnings.push_back(kIdenticallyZeroWarning);
        return rep;
    }
    int up = 0;
    int down = 0;
    for (std::size_t i = 1; i < rep.samples.size(); ++i) {
        const double d = rep.samples[i].Gn - rep.samples[i - 1].Gn;
        if (d > 0.0) ++up;
        else if (d < 0.0) ++down;
    }
    const int steps = static_cast<int>(rep.samples.size()) - 1;
    if (up == steps) rep.direction = 1;
    else if (down == steps) rep.direction = -1;
    rep.strictly_monotone = rep.direction != 0;
    return rep;
}

MonotonicityReport monotonicity_scan(const SystemParams& p, int n, int grid_size,
                                     const AbelianOptions& opt, double margin) {
    const Annulus a = annulus(p);
    std::vector<AbelianSample> samples;
    for (double h : scan_grid(a, grid_size, margin)) samples.push_back(ratio_G(p, a, n, h, opt));
    return assess_monotonicity(a, n, std::move(samples));
}

} // namespace twave
