#pragma once

#include "twave/equilibria.hpp"
#include "twave/model.hpp"
#include "twave/quadrature.hpp"

#include <string>
#include <vector>

namespace twave {

/// Closed level curve H = h: its two turning points on y = 0.
struct OrbitGeometry {
    double h;
    double u_minus;
    double u_plus;
};

/// A_0, A_n and G_n = A_n / A_0 at one energy level.
struct AbelianSample {
    double h;
    double A0;
    double An;
    double Gn;
};

/// Admissible alpha0/alphan values for which A(h) has a zero in (h1, h2).
struct RatioInterval {
    int n = 2;
    double lower = 0.0;
    double upper = 0.0;
    double K_center = 0.0;
    double K_boundary = 0.0;
    bool empty = false;
    std::vector<std::string> warnings;

    bool contains(double ratio) const { return !empty && lower < ratio && ratio < upper; }
};

struct BoundaryLimits {
    double K_center;
    double K_boundary;
};

struct MonotonicityReport {
    int n = 2;
    std::vector<AbelianSample> samples;  // ascending in h
    bool strictly_monotone = false;
    int direction = 0;                   // +1 increasing, -1 decreasing, 0 neither
    double g_min = 0.0;
    double g_max = 0.0;
    bool identically_zero = false;
    bool guaranteed = false;             // monotonicity backed by theory for this regime
    std::vector<std::string> warnings;
};

/// Tolerances shared by every routine in this module.
struct AbelianOptions {
    quad::Options quadrature{};
    /// |h - endpoint| below which an orbit is treated as degenerate.
    double degenerate_gap = 1e-12;
};

extern const char* const kNoGuaranteeWarning;
extern const char* const kIdenticallyZeroWarning;

/// Turning points of Gamma_h.  Throws DomainError for h outside (h1, h2) and
/// DegenerateOrbit within degenerate_gap of an endpoint.
OrbitGeometry turning_points(const SystemParams& p, const Annulus& a, double h,
                             const AbelianOptions& opt = {});

/// A_m(h) = oint_{Gamma_h} u^m y du, positively oriented so that A_0 > 0.
double abelian_A(const SystemParams& p, int m, double h, const AbelianOptions& opt = {});

/// A_0 and A_n from one quadrature over the same geometry.
AbelianSample ratio_G(const SystemParams& p, int n, double h, const AbelianOptions& opt = {});
AbelianSample ratio_G(const SystemParams& p, const Annulus& a, int n, double h,
                      const AbelianOptions& opt = {});

/// Period of Gamma_h under the unperturbed flow.
double orbit_period(const SystemParams& p, const Annulus& a, double h,
                    const AbelianOptions& opt = {});

/// A_m on the boundary orbit itself (h = h2), where the integral still
/// converges.
double abelian_A_boundary(const SystemParams& p, int m, const AbelianOptions& opt = {});

/// Limits of G_n at the center (center_u^n) and at the boundary orbit
/// (Richardson extrapolation along h2 - (h2 - h1) 2^-j, j = 10..16).
BoundaryLimits boundary_limits(const SystemParams& p, int n, const AbelianOptions& opt = {});

/// Negated range of G_n over the annulus.
RatioInterval ratio_interval(const SystemParams& p, int n, const AbelianOptions& opt = {});

/// The h at which G_n(h) = -ratio.  Throws NoZero when -ratio is outside the
/// range of G_n.
double solve_h_for_ratio(const SystemParams& p, int n, double ratio,
                         const AbelianOptions& opt = {});

/// Energy grid of `size` points in (h1 + margin w, h2 - margin w), w = h2 - h1:
/// half uniform from the center side, half geometric towards the boundary orbit.
std::vector<double> scan_grid(const Annulus& a, int size, double margin = 1e-6);

/// Strict-monotonicity verdict for samples ascending in h.
MonotonicityReport assess_monotonicity(const Annulus& a, int n, std::vector<AbelianSample> samples);

/// G_n on scan_grid, with a strict-monotonicity verdict.
MonotonicityReport monotonicity_scan(const SystemParams& p, int n, int grid_size,
                                     const AbelianOptions& opt = {}, double margin = 1e-6);

} // namespace twave
