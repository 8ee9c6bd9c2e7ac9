#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "twave/equilibria.hpp"
#include "twave/errors.hpp"

#include <cmath>
#include <map>

using namespace twave;

namespace {

SystemParams make(double beta, double u0, double k) {
    SystemParams p;
    p.beta = beta;
    p.u0 = u0;
    p.k = k;
    return p;
}

// Independent region test straight from the inequalities defining each case.
std::optional<Regime> expected_regime(double u0, double k) {
    if (k < 0) return std::nullopt;
    if (u0 > 0) {
        if (k == u0) return Regime::CuspCase;
        if (k < u0) return std::nullopt;
        if (k == 2 * u0) return Regime::PosBoundary;
        return k < 2 * u0 ? Regime::PosNarrow : Regime::PosWide;
    }
    if (u0 == -k) return Regime::Symmetric;
    return -k < u0 ? Regime::NegInside : Regime::NegOutside;
}

EquilibriumKind kind_at(const std::vector<Equilibrium>& eqs, double u) {
    for (const auto& e : eqs)
        if (e.location.u == u) return e.kind;
    FAIL("no equilibrium at u = " << u);
    return EquilibriumKind::Cusp;
}

} // namespace

TEST_CASE("regime_of examples") {
    CHECK(regime_of(make(1, 1, 2)) == Regime::PosBoundary);
    CHECK(regime_of(make(1, -2, 1)) == Regime::NegOutside);
    CHECK(regime_of(make(1, -1, 1)) == Regime::Symmetric);
    CHECK(regime_of(make(1, 2, 3)) == Regime::PosNarrow);
    CHECK(regime_of(make(1, 1, 3)) == Regime::PosWide);
    CHECK(regime_of(make(1, -1, 2)) == Regime::NegInside);
    CHECK(regime_of(make(1, 1, 1)) == Regime::CuspCase);
}

TEST_CASE("unsupported regimes are refused") {
    CHECK_THROWS_AS(regime_of(make(1, 1, -1)), UnsupportedRegime);
    CHECK_THROWS_AS(regime_of(make(1, 2, 1)), UnsupportedRegime);
    CHECK_THROWS_WITH(regime_of(make(1, 2, 1)), doctest::Contains("unsupported regime"));
    CHECK_THROWS_AS(regime_of(make(1, 0, 1)), InvalidParams);
    CHECK_THROWS_AS(classify(make(1, 3, 1)), UnsupportedRegime);
}

TEST_CASE("regime_of partitions a 100x100 grid") {
    // Grid on multiples of 1/8 so the boundary lines k = u0, k = 2 u0 and
    // u0 = -k are hit exactly.
    std::map<Regime, int> seen;
    int supported = 0;
    for (int i = 0; i < 100; ++i)
        for (int j = 0; j < 100; ++j) {
            const double u0 = -6.25 + 0.125 * i;
            const double k = -0.25 + 0.125 * j;
            if (u0 == 0.0 || k == 0.0) continue;
            const auto want = expected_regime(u0, k);
            if (!want) {
                CHECK_THROWS_AS(regime_of(make(1, u0, k)), UnsupportedRegime);
                continue;
            }
            const Regime got = regime_of(make(1, u0, k));
            CHECK(got == *want);
            ++seen[got];
            ++supported;
        }
    CHECK(supported > 0);
    CHECK(seen.size() == 7);
}

TEST_CASE("classify reproduces the fixed-point table") {
    const auto a = classify(make(1, 2, 3));
    REQUIRE(a.size() == 3);
    CHECK(kind_at(a, 0) == EquilibriumKind::Saddle);
    CHECK(kind_at(a, 2) == EquilibriumKind::Center);
    CHECK(kind_at(a, 3) == EquilibriumKind::Saddle);

    const auto b = classify(make(1, -1, 2));
    CHECK(kind_at(b, 0) == EquilibriumKind::Center);
    CHECK(kind_at(b, -1) == EquilibriumKind::Saddle);
    CHECK(kind_at(b, 2) == EquilibriumKind::Saddle);

    const auto c = classify(make(1, 1, 1));
    REQUIRE(c.size() == 2);
    CHECK(kind_at(c, 0) == EquilibriumKind::Saddle);
    CHECK(kind_at(c, 1) == EquilibriumKind::Cusp);

    // Remaining columns: 0 < u0 < k, k = 2 u0, k > 2 u0 all center at u0;
    // u0 < 0 cases center at 0.
    for (const auto& p : {make(1, 1, 2), make(1, 1, 3)}) {
        const auto e = classify(p);
        CHECK(kind_at(e, 0) == EquilibriumKind::Saddle);
        CHECK(kind_at(e, p.u0) == EquilibriumKind::Center);
        CHECK(kind_at(e, p.k) == EquilibriumKind::Saddle);
    }
    for (const auto& p : {make(1, -2, 1), make(1, -1, 1)}) {
        const auto e = classify(p);
        CHECK(kind_at(e, 0) == EquilibriumKind::Center);
        CHECK(kind_at(e, p.u0) == EquilibriumKind::Saddle);
        CHECK(kind_at(e, p.k) == EquilibriumKind::Saddle);
    }
}

TEST_CASE("Jacobian determinants and the minimum test") {
    for (const auto& p : {make(1, 2, 3), make(2, 1, 2), make(1, 1, 3), make(1, -1, 2), make(0.5, -2, 1),
                          make(1, -1, 1)}) {
        for (const auto& e : classify(p)) {
            const double u = e.location.u;
            CHECK(e.location.y == 0.0);
            // -beta k u0, beta u0 (k - u0), beta k (u0 - k)
            double det = 0;
            if (u == 0) det = -p.beta * p.k * p.u0;
            else if (u == p.u0) det = p.beta * p.u0 * (p.k - p.u0);
            else det = p.beta * p.k * (p.u0 - p.k);
            CHECK(e.jacobian_det == doctest::Approx(det).epsilon(1e-12));
            CHECK((det < 0) == (e.kind == EquilibriumKind::Saddle));
            if (e.kind == EquilibriumKind::Center) CHECK(phi_second(p, u) > 0.0);
        }
    }
}

TEST_CASE("annulus examples") {
    const Annulus a = annulus(make(1, 2, 3));
    CHECK(a.h.lo == doctest::Approx(-8.0 / 3.0).epsilon(1e-14));
    CHECK(a.h.hi == doctest::Approx(-9.0 / 4.0).epsilon(1e-14));
    CHECK(a.boundary_kind == BoundaryKind::Homoclinic);
    CHECK(a.saddles == std::vector<double>{3.0});

    const Annulus b = annulus(make(1, -1, 2));
    CHECK(b.h.lo == 0.0);
    CHECK(b.h.hi == doctest::Approx(5.0 / 12.0).epsilon(1e-14));
    CHECK(b.boundary_kind == BoundaryKind::Homoclinic);
    CHECK(b.saddles == std::vector<double>{-1.0});

    const Annulus c = annulus(make(1, -1, 1));
    CHECK(c.h.lo == 0.0);
    CHECK(c.h.hi == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(c.boundary_kind == BoundaryKind::Heteroclinic);
    CHECK(c.u_range.lo == -1.0);
    CHECK(c.u_range.hi == 1.0);

    CHECK_THROWS_AS(annulus(make(1, 1, 1)), NoAnnulus);
}

TEST_CASE("annulus energies follow the closed formulas") {
    for (const auto& p : {make(1, 2, 3), make(1.5, 1, 2), make(0.7, 3, 4)}) {
        const Annulus a = annulus(p);
        const double h1 = p.beta * std::pow(p.u0, 3) * (p.u0 - 2 * p.k) / 12.0;
        const double h2 = p.beta * std::pow(p.k, 3) * (p.k - 2 * p.u0) / 12.0;
        CHECK(a.h.lo == doctest::Approx(h1).epsilon(1e-13));
        CHECK(a.h.hi == doctest::Approx(h2).epsilon(1e-13));
    }
    const SystemParams wide = make(1, 1, 3);
    CHECK(annulus(wide).h.hi == 0.0);
    CHECK(annulus(wide).h.lo == doctest::Approx(std::pow(1.0, 3) * (1 - 6) / 12.0));
}

TEST_CASE("annulus invariants in every regime") {
    for (const auto& p : {make(1, 2, 3), make(1, 1, 2), make(1, 1, 3), make(1, -1, 2), make(1, -2, 1),
                          make(1, -1, 1), make(2.5, 0.5, 0.8), make(0.3, -0.4, 3)}) {
        const Annulus a = annulus(p);
        CAPTURE(to_string(a.regime));
        CHECK(a.h.lo < a.h.hi);
        CHECK(a.h.lo == doctest::Approx(phi(p, a.center_u)).epsilon(1e-14));
        const double tol = 1e-10 * std::max(1.0, std::abs(a.h.hi));
        CHECK(std::abs(phi(p, a.u_range.lo) - a.h.hi) <= tol);
        CHECK(std::abs(phi(p, a.u_range.hi) - a.h.hi) <= tol);
        CHECK(a.u_range.contains(a.center_u));
        const bool hetero = a.regime == Regime::PosBoundary || a.regime == Regime::Symmetric;
        CHECK((a.boundary_kind == BoundaryKind::Heteroclinic) == hetero);

        // Exactly one sign change of Phi' inside the u-range: the center.
        int changes = 0;
        const int N = 4000;
        double prev = phi_prime(p, a.u_range.lo + 1e-9 * a.u_range.width());
        for (int i = 1; i <= N; ++i) {
            const double u = a.u_range.lo + a.u_range.width() * (i - 0.5) / N;
            const double d = phi_prime(p, u);
            if ((d > 0) != (prev > 0)) ++changes;
            prev = d;
        }
        CHECK(changes == 1);
    }
}

TEST_CASE("boundary points sit on the documented brackets") {
    const Annulus a = annulus(make(1, 2, 3));  // w1 in (0, u0)
    REQUIRE(a.boundary_point_w);
    CHECK(*a.boundary_point_w > 0.0);
    CHECK(*a.boundary_point_w < 2.0);
    const Annulus b = annulus(make(1, -1, 2));  // u1 in (0, k)
    REQUIRE(b.boundary_point_w);
    CHECK(*b.boundary_point_w > 0.0);
    CHECK(*b.boundary_point_w < 2.0);
    const Annulus c = annulus(make(1, -2, 1));  // w2 in (u0, 0)
    REQUIRE(c.boundary_point_w);
    CHECK(*c.boundary_point_w > -2.0);
    CHECK(*c.boundary_point_w < 0.0);
    CHECK_FALSE(annulus(make(1, 1, 2)).boundary_point_w);
}

TEST_CASE("monotonicity guarantee flags") {
    CHECK_FALSE(monotonicity_guaranteed(Regime::PosWide, 2));
    CHECK_FALSE(monotonicity_guaranteed(Regime::CuspCase, 2));
    CHECK(monotonicity_guaranteed(Regime::Symmetric, 4));
    CHECK_FALSE(monotonicity_guaranteed(Regime::Symmetric, 3));
    CHECK(monotonicity_guaranteed(Regime::NegInside, 5));
}
