#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "twave/errors.hpp"
#include "twave/model.hpp"

#include <algorithm>
#include <cmath>

using namespace twave;

namespace {

SystemParams make(double beta, double u0, double k) {
    SystemParams p;
    p.beta = beta;
    p.u0 = u0;
    p.k = k;
    return p;
}

// Expanded polynomial written out term by term, independent of the Horner
// form used by phi().
double phi_expanded(const SystemParams& p, double u) {
    return p.beta * (-std::pow(u, 4) / 4.0 + (p.k + p.u0) * std::pow(u, 3) / 3.0 - p.k * p.u0 * u * u / 2.0);
}

} // namespace

TEST_CASE("phi_prime examples") {
    const SystemParams p = make(1, 1, 2);
    CHECK(phi_prime(make(3, -2, 5), 0.0) == 0.0);
    CHECK(phi_prime(p, 1.0) == 0.0);
    CHECK(phi_prime(p, 1.5) == doctest::Approx(0.375).epsilon(1e-15));
}

TEST_CASE("phi matches its expanded form") {
    for (const auto& p : {make(1, 1, 2), make(2.5, -1, 3), make(0.3, 2, 7), make(1, -3, 1)})
        for (double u = -4.0; u <= 4.0; u += 0.125)
            CHECK(phi(p, u) == doctest::Approx(phi_expanded(p, u)).epsilon(1e-13).scale(1.0));
}

TEST_CASE("phi_prime agrees with a central difference of phi") {
    const double step = 1e-6;
    for (const auto& p : {make(1, 1, 2), make(1, 2, 3), make(1.7, -1, 2), make(0.5, -2, 1), make(1, -1, 1)}) {
        const double r = 2.0 * std::max(std::abs(p.u0), std::abs(p.k));
        for (int i = 0; i <= 400; ++i) {
            const double u = -r + 2.0 * r * i / 400.0;
            const double fd = (phi(p, u + step) - phi(p, u - step)) / (2.0 * step);
            const double exact = phi_prime(p, u);
            // relative where the derivative is sizable, absolute near its zeros
            CHECK(std::abs(fd - exact) <= 1e-6 * std::max(1.0, std::abs(exact)));
        }
    }
}

TEST_CASE("phi_second agrees with a central difference of phi_prime") {
    const SystemParams p = make(1.3, -1.5, 2);
    for (double u = -3.0; u <= 3.0; u += 0.1) {
        const double fd = (phi_prime(p, u + 1e-6) - phi_prime(p, u - 1e-6)) / 2e-6;
        CHECK(std::abs(fd - phi_second(p, u)) <= 1e-6 * std::max(1.0, std::abs(fd)));
    }
}

TEST_CASE("hamiltonian examples") {
    const SystemParams p = make(1, 1, 2);
    CHECK(hamiltonian(p, {0.5, 0.0}) == doctest::Approx(-9.0 / 64.0).epsilon(1e-15));
    CHECK(hamiltonian(make(4, -3, 2), {0.0, 0.0}) == 0.0);
    CHECK(hamiltonian(p, {1.0, 1.0}) == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("vector_field examples") {
    SystemParams p = make(1, 1, 2);
    const Tangent eq = vector_field(p, {p.u0, 0.0});
    CHECK(eq.du == 0.0);
    CHECK(eq.dy == 0.0);

    const Tangent t = vector_field(p, {1.5, 0.2});
    CHECK(t.du == doctest::Approx(0.2));
    CHECK(t.dy == doctest::Approx(-0.375).epsilon(1e-15));

    p.epsilon = 0.1;
    p.alpha0 = -1.06133;
    p.alphan = 1.0;
    p.n = 2;
    const Tangent q = vector_field(p, {1.5, 0.2});
    CHECK(q.du == doctest::Approx(0.2));
    CHECK(q.dy == doctest::Approx(0.1 * (-1.06133 + 2.25) * 0.2 - 0.375).epsilon(1e-14));
}

TEST_CASE("unperturbed field is tangent to level sets of H") {
    const SystemParams p = make(1.2, -1, 2.5);
    for (double u = -2; u <= 3; u += 0.25)
        for (double y = -1; y <= 1; y += 0.25) {
            const Tangent t = vector_field(p, {u, y});
            // dH/deta = H_u u' + H_y y'
            const double dh = phi_prime(p, u) * t.du + y * t.dy;
            CHECK(std::abs(dh) <= 1e-12 * (1.0 + std::abs(phi_prime(p, u) * y)));
        }
}

TEST_CASE("map_pde_params examples") {
    PdeParams a;
    a.a0 = 0.7;
    a.c = 0.7;
    a.an = 0.0;
    a.D = 1.0;
    a.beta_tilde = 1.0;
    a.epsilon = 0.1;
    SystemParams p = map_pde_params(a, 1, 2, 2);
    CHECK(p.alpha0 == 0.0);
    CHECK(p.alphan == 0.0);
    CHECK(p.beta == 1.0);

    PdeParams b;
    b.a0 = -0.106133;
    b.c = 0.0;
    b.an = 0.1;
    b.D = 1.0;
    b.beta_tilde = 1.0;
    b.epsilon = 0.1;
    p = map_pde_params(b, 1, 2, 2);
    CHECK(p.alpha0 == doctest::Approx(-1.06133).epsilon(1e-14));
    CHECK(p.alphan == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(p.beta == 1.0);

    PdeParams c;
    c.a0 = 0.2;
    c.c = 0.0;
    c.an = 0.4;
    c.D = 2.0;
    c.beta_tilde = 4.0;
    c.epsilon = 0.1;
    p = map_pde_params(c, 1, 2, 3);
    CHECK(p.alpha0 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(p.alphan == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(p.beta == 2.0);
    CHECK(p.n == 3);
}

TEST_CASE("map_pde_params round trip and scaling identities") {
    PdeParams d;
    d.a0 = 0.37;
    d.c = -0.21;
    d.an = 1.9;
    d.D = 0.45;
    d.beta_tilde = 2.2;
    d.epsilon = 0.03;
    const SystemParams p = map_pde_params(d, -1, 2, 4);
    CHECK(p.epsilon * p.alpha0 * d.D == doctest::Approx(d.a0 - d.c).epsilon(1e-15));
    CHECK(p.epsilon * p.alphan * d.D == doctest::Approx(d.an).epsilon(1e-15));
    CHECK(p.beta * d.D == doctest::Approx(d.beta_tilde).epsilon(1e-15));

    const PdeParams back = unmap_pde_params(p, d.D, d.c);
    CHECK(back.a0 == doctest::Approx(d.a0).epsilon(1e-15));
    CHECK(back.an == doctest::Approx(d.an).epsilon(1e-15));
    CHECK(back.beta_tilde == doctest::Approx(d.beta_tilde).epsilon(1e-15));
    CHECK(back.epsilon == d.epsilon);
}

TEST_CASE("map_pde_params rejects invalid reductions") {
    PdeParams d;
    d.epsilon = 0.0;
    CHECK_THROWS_AS(map_pde_params(d, 1, 2, 2), InvalidParams);
    d.epsilon = 0.1;
    d.D = 0.0;
    CHECK_THROWS_AS(map_pde_params(d, 1, 2, 2), InvalidParams);
    d.D = -1.0;
    CHECK_THROWS_WITH_AS(map_pde_params(d, 1, 2, 2), doctest::Contains("invalid reduction"), InvalidParams);
}

TEST_CASE("validate rejects degenerate parameters") {
    CHECK_NOTHROW(make(1, 1, 2).validate());
    CHECK_THROWS_AS(make(0, 1, 2).validate(), InvalidParams);
    CHECK_THROWS_AS(make(-1, 1, 2).validate(), InvalidParams);
    CHECK_THROWS_AS(make(1, 0, 2).validate(), InvalidParams);
    CHECK_THROWS_AS(make(1, 1, 0).validate(), InvalidParams);
    SystemParams p = make(1, 1, 2);
    p.n = 1;
    CHECK_THROWS_AS(p.validate(), InvalidParams);
    p.n = 2;
    p.epsilon = -0.1;
    CHECK_THROWS_AS(p.validate(), InvalidParams);
    p.epsilon = NAN;
    CHECK_THROWS_AS(p.validate(), InvalidParams);
}

TEST_CASE("nearly_equal uses a relative tolerance") {
    CHECK(nearly_equal(2.0, 2.0 * (1 + 1e-13)));
    CHECK_FALSE(nearly_equal(2.0, 2.0 * (1 + 1e-10)));
    CHECK(nearly_equal(0.0, 0.0));
}
