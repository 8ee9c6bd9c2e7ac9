#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "twave/abelian.hpp"
#include "twave/errors.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace twave;

namespace {

SystemParams make(double beta, double u0, double k) {
    SystemParams p;
    p.beta = beta;
    p.u0 = u0;
    p.k = k;
    return p;
}

// Area of Gamma_h as a polygon: upper branch y = sqrt(2(h - Phi)) on a
// Chebyshev-spaced u grid, mirrored for the lower branch.
double shoelace_area(const SystemParams& p, const OrbitGeometry& g, int points) {
    std::vector<std::pair<double, double>> poly;
    const int half = points / 2;
    for (int i = 0; i <= half; ++i) {
        const double t = std::numbers::pi * i / half;
        const double u = g.u_minus + (g.u_plus - g.u_minus) * 0.5 * (1 - std::cos(t));
        poly.push_back({u, std::sqrt(std::max(0.0, 2 * (g.h - phi(p, u))))});
    }
    for (int i = half - 1; i >= 1; --i) poly.push_back({poly[i].first, -poly[i].second});
    double s = 0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const auto& a = poly[i];
        const auto& b = poly[(i + 1) % poly.size()];
        s += a.first * b.second - b.first * a.second;
    }
    return std::abs(s) / 2;
}

// Brute-force midpoint rule for 2 int u^m sqrt(2(h - Phi)) du on the
// boundary orbit of (1, 1, 2), where the integrand has no endpoint
// square-root singularity.
double boundary_midpoint(int m) {
    const SystemParams p = make(1, 1, 2);
    const int N = 200000;
    double s = 0;
    for (int i = 0; i < N; ++i) {
        const double u = 2.0 * (i + 0.5) / N;
        s += std::pow(u, m) * std::sqrt(std::max(0.0, -2 * phi(p, u)));
    }
    return 2 * s * 2.0 / N;
}

std::vector<SystemParams> regimes() {
    return {make(1, 2, 3), make(1, 1, 2), make(1, 1, 3), make(1, -1, 2), make(1, -2, 1), make(1, -1, 1)};
}

} // namespace

TEST_CASE("turning points examples") {
    const SystemParams p = make(1, 1, 2);
    const Annulus a = annulus(p);
    const OrbitGeometry g = turning_points(p, a, -9.0 / 64.0);
    CHECK(g.u_minus == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(g.u_plus == doctest::Approx(1.5).epsilon(1e-13));

    const OrbitGeometry c = turning_points(p, a, -0.25 + 1e-10);
    CHECK(std::abs(c.u_minus - 1) < 1e-4);
    CHECK(std::abs(c.u_plus - 1) < 1e-4);

    const SystemParams q = make(1, -1, 2);
    const OrbitGeometry r = turning_points(q, annulus(q), 0.2);
    CHECK(r.u_minus < 0.0);
    CHECK(r.u_plus > 0.0);
    CHECK(std::abs(phi(q, r.u_minus) - 0.2) <= 1e-10);
    CHECK(std::abs(phi(q, r.u_plus) - 0.2) <= 1e-10);
}

TEST_CASE("turning points reject energies outside the annulus") {
    const SystemParams p = make(1, 1, 2);
    const Annulus a = annulus(p);
    CHECK_THROWS_AS(turning_points(p, a, 0.1), DomainError);
    CHECK_THROWS_AS(turning_points(p, a, -0.3), DomainError);
    CHECK_THROWS_AS(turning_points(p, a, -1e-13), DegenerateOrbit);
    CHECK_THROWS_AS(turning_points(p, a, -0.25 + 1e-13), DegenerateOrbit);
}

TEST_CASE("G_2 on the reference level") {
    const AbelianSample s = ratio_G(make(1, 1, 2), 2, -9.0 / 64.0);
    CHECK(s.Gn == doctest::Approx(1.06133).epsilon(2e-3 / 1.06133));
    CHECK(s.Gn == doctest::Approx(s.An / s.A0));
    CHECK(s.A0 > 0.0);
}

TEST_CASE("A_0 on the boundary orbit has a closed form") {
    const SystemParams p = make(1, 1, 2);
    // On h = 0: y = u (2 - u) / sqrt 2, so A_m = sqrt 2 int_0^2 u^{m+1}(2-u) du.
    for (int m = 0; m <= 6; ++m) {
        const double exact = std::numbers::sqrt2 * std::pow(2.0, m + 3) / ((m + 2) * (m + 3));
        CHECK(abelian_A_boundary(p, m) == doctest::Approx(exact).epsilon(1e-12));
        CHECK(boundary_midpoint(m) == doctest::Approx(exact).epsilon(1e-6));
    }
    CHECK(abelian_A_boundary(p, 0) == doctest::Approx(4 * std::numbers::sqrt2 / 3).epsilon(1e-12));
    CHECK(abelian_A(p, 0, -1e-9) == doctest::Approx(4 * std::numbers::sqrt2 / 3).epsilon(1e-6));
}

TEST_CASE("A_0 matches the shoelace area") {
    for (const auto& p : regimes()) {
        const Annulus a = annulus(p);
        CAPTURE(to_string(a.regime));
        std::mt19937_64 rng(2024);
        std::uniform_real_distribution<double> x(0.02, 0.98);
        for (int i = 0; i < 20; ++i) {
            const double h = a.h.lo + x(rng) * a.h.width();
            const OrbitGeometry g = turning_points(p, a, h);
            const double area = shoelace_area(p, g, 10000);
            CHECK(abelian_A(p, 0, h) == doctest::Approx(area).epsilon(1e-4));
        }
    }
}

TEST_CASE("A_0 increases with h") {
    for (const auto& p : regimes()) {
        const Annulus a = annulus(p);
        double prev = 0;
        for (double h : scan_grid(a, 60, 1e-4)) {
            const double v = abelian_A(p, 0, h);
            CHECK(v > prev);
            prev = v;
        }
    }
}

TEST_CASE("quadrature is converged at the default rule") {
    AbelianOptions fine;
    fine.quadrature.order = 24;
    for (const auto& p : regimes()) {
        const Annulus a = annulus(p);
        for (double x : {0.1, 0.5, 0.9, 0.999}) {
            const double h = a.h.lo + x * a.h.width();
            for (int m : {0, 3}) {
                const double base = abelian_A(p, m, h);
                const double ref = abelian_A(p, m, h, fine);
                CHECK(std::abs(base - ref) <= 1e-8 * std::max(std::abs(ref), abelian_A(p, 0, h)));
            }
        }
    }
}

TEST_CASE("odd moments vanish in the symmetric regime") {
    const SystemParams p = make(1, -1, 1);
    for (double h : {0.01, 0.1, 0.2, 0.249})
        for (int m : {1, 3, 5}) CHECK(std::abs(abelian_A(p, m, h)) <= 1e-10 * abelian_A(p, 0, h));
}

TEST_CASE("G_n limits at both ends of the annulus") {
    const SystemParams p = make(1, 1, 2);
    CHECK(ratio_G(p, 2, -0.25 + 1e-9).Gn == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(ratio_G(p, 2, -1e-9).Gn == doctest::Approx(1.2).epsilon(1e-6));
}

TEST_CASE("boundary limits") {
    const SystemParams p = make(1, 1, 2);
    for (int n = 2; n <= 8; ++n) {
        const BoundaryLimits lim = boundary_limits(p, n);
        CHECK(lim.K_center == 1.0);
        const double exact = 3.0 * std::pow(2.0, n + 1) / ((n + 2) * (n + 3));
        CHECK(lim.K_boundary == doctest::Approx(exact).epsilon(1e-6));
    }
    const BoundaryLimits s = boundary_limits(make(1, -1, 1), 3);
    CHECK(s.K_center == 0.0);
    CHECK(std::abs(s.K_boundary) < 1e-10);
    // Homoclinic boundary orbit: extrapolated limit equals the integral on it.
    const SystemParams q = make(1, 2, 3);
    const BoundaryLimits hq = boundary_limits(q, 3);
    CHECK(hq.K_center == 8.0);
    CHECK(hq.K_boundary == doctest::Approx(abelian_A_boundary(q, 3) / abelian_A_boundary(q, 0)).epsilon(1e-5));
}

TEST_CASE("ratio interval examples") {
    const SystemParams p = make(1, 1, 2);
    const RatioInterval r2 = ratio_interval(p, 2);
    CHECK(r2.lower == doctest::Approx(-1.2).epsilon(1e-6));
    CHECK(r2.upper == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(r2.contains(-1.06133));
    CHECK_FALSE(r2.contains(-2.0));
    CHECK(r2.warnings.empty());

    const RatioInterval r3 = ratio_interval(p, 3);
    CHECK(r3.lower == doctest::Approx(-1.6).epsilon(1e-6));
    CHECK(r3.upper == doctest::Approx(-1.0));
    CHECK(ratio_G(p, 3, -1e-7).Gn == doctest::Approx(1.6).epsilon(1e-4));

    const RatioInterval sym = ratio_interval(make(1, -1, 1), 3);
    CHECK(sym.empty);
    CHECK_FALSE(sym.contains(0.0));
    REQUIRE(!sym.warnings.empty());
    CHECK(sym.warnings.front() == std::string(kIdenticallyZeroWarning));

    const RatioInterval wide = ratio_interval(make(1, 1, 3), 2);
    CHECK(std::find(wide.warnings.begin(), wide.warnings.end(), std::string(kNoGuaranteeWarning)) !=
          wide.warnings.end());
}

TEST_CASE("G_n range matches its limits on guaranteed regimes") {
    for (const auto& p : {make(1, 2, 3), make(1, -1, 2), make(1, -2, 1), make(1, -1, 1)}) {
        const int n = 4;
        const RatioInterval r = ratio_interval(p, n);
        const MonotonicityReport m = monotonicity_scan(p, n, 100);
        CHECK(m.strictly_monotone);
        CHECK(-m.g_max >= r.lower - 1e-4 * std::max(1.0, std::abs(r.lower)));
        CHECK(-m.g_min <= r.upper + 1e-4 * std::max(1.0, std::abs(r.upper)));
        CHECK(-m.g_max == doctest::Approx(r.lower).epsilon(1e-3));
        CHECK(-m.g_min == doctest::Approx(r.upper).epsilon(1e-3));
    }
}

TEST_CASE("solve_h_for_ratio examples and inverse property") {
    const SystemParams p = make(1, 1, 2);
    CHECK(solve_h_for_ratio(p, 2, -1.06133) == doctest::Approx(-9.0 / 64.0).epsilon(1e-3 / (9.0 / 64.0)));
    CHECK(solve_h_for_ratio(p, 2, -1 - 1e-9) < -0.2499);
    // the computed boundary limit carries a ~3e-9 extrapolation error
    CHECK(solve_h_for_ratio(p, 2, -1.2 + 1e-7) > -1e-3);
    CHECK_THROWS_AS(solve_h_for_ratio(p, 2, -2.0), NoZero);
    CHECK_THROWS_AS(solve_h_for_ratio(p, 2, -0.5), NoZero);
    CHECK_THROWS_AS(solve_h_for_ratio(make(1, -1, 1), 3, -0.5), NoZero);

    for (const auto& q : {make(1, 1, 2), make(1, 2, 3), make(1, -1, 2), make(1, -2, 1)})
        for (int n : {2, 3}) {
            const RatioInterval r = ratio_interval(q, n);
            for (double t : {0.1, 0.3, 0.5, 0.7, 0.9}) {
                const double ratio = r.lower + t * (r.upper - r.lower);
                const double h = solve_h_for_ratio(q, n, ratio);
                CHECK(std::abs(ratio_G(q, n, h).Gn + ratio) <= 1e-8);
            }
        }
}

TEST_CASE("monotonicity scan examples") {
    CHECK(monotonicity_scan(make(1, 2, 3), 2, 200).strictly_monotone);
    CHECK(monotonicity_scan(make(1, -2, 1), 5, 200).strictly_monotone);
    const MonotonicityReport z = monotonicity_scan(make(1, -1, 1), 3, 50);
    CHECK(z.identically_zero);
    CHECK_FALSE(z.strictly_monotone);
    const MonotonicityReport w = monotonicity_scan(make(1, 1, 3), 2, 50);
    CHECK_FALSE(w.guaranteed);
    CHECK(std::find(w.warnings.begin(), w.warnings.end(), std::string(kNoGuaranteeWarning)) != w.warnings.end());
}

TEST_CASE("scan grid spacing") {
    const Annulus a = annulus(make(1, 1, 2));
    const auto g = scan_grid(a, 200, 1e-6);
    REQUIRE(g.size() == 200);
    for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);
    CHECK(g.front() == doctest::Approx(a.h.lo + 1e-6 * a.h.width()));
    CHECK(g.back() == doctest::Approx(a.h.hi - 1e-6 * a.h.width()).epsilon(1e-12));
    CHECK_THROWS_AS(scan_grid(a, 1), ContractError);
}

TEST_CASE("orbit period grows towards the boundary orbit") {
    const SystemParams p = make(1, 1, 2);
    const Annulus a = annulus(p);
    // Small orbits: 2 pi / sqrt(Phi''(center)).
    CHECK(orbit_period(p, a, -0.25 + 1e-10) == doctest::Approx(2 * std::numbers::pi).epsilon(1e-4));
    CHECK(orbit_period(p, a, -1e-6) > orbit_period(p, a, -1e-3));
}
