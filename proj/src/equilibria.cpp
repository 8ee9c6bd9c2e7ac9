#include "twave/equilibria.hpp"

#include "twave/errors.hpp"
#include "twave/roots.hpp"

#include <cmath>

namespace twave {

std::string_view to_string(Regime r) {
    switch (r) {
    case Regime::PosNarrow: return "PosNarrow";
    case Regime::PosBoundary: return "PosBoundary";
    case Regime::PosWide: return "PosWide";
    case Regime::NegInside: return "NegInside";
    case Regime::NegOutside: return "NegOutside";
    case Regime::Symmetric: return "Symmetric";
    case Regime::CuspCase: return "CuspCase";
    }
    return "?";
}

std::string_view to_string(EquilibriumKind k) {
    switch (k) {
    case EquilibriumKind::Saddle: return "saddle";
    case EquilibriumKind::Center: return "center";
    case EquilibriumKind::Cusp: return "cusp";
    }
    return "?";
}

std::string_view to_string(BoundaryKind k) {
    return k == BoundaryKind::Homoclinic ? "homoclinic" : "heteroclinic";
}

Regime regime_of(const SystemParams& p) {
    const double u0 = p.u0;
    const double k = p.k;
    if (u0 == 0.0 || k == 0.0) throw InvalidParams("u0 and k must be nonzero");
    if (k < 0.0) throw UnsupportedRegime("k < 0 is not covered");
    if (u0 > 0.0) {
        if (nearly_equal(k, u0)) return Regime::CuspCase;
        if (k < u0) throw UnsupportedRegime("0 < k < u0 is not covered");
        if (nearly_equal(k, 2.0 * u0)) return Regime::PosBoundary;
        return k < 2.0 * u0 ? Regime::PosNarrow : Regime::PosWide;
    }
    if (nearly_equal(u0, -k)) return Regime::Symmetric;
    return u0 > -k ? Regime::NegInside : Regime::NegOutside;
}

bool monotonicity_guaranteed(Regime r, int n) {
    switch (r) {
    case Regime::PosNarrow:
    case Regime::PosBoundary:
    case Regime::NegInside:
    case Regime::NegOutside: return true;
    case Regime::Symmetric: return n % 2 == 0;
    case Regime::PosWide:
    case Regime::CuspCase: return false;
    }
    return false;
}

namespace {

// Center test: the point is a strict local minimum of H, i.e. H_uu > 0 and
// H_uu H_yy - H_uy^2 > 0 (H_yy = 1, H_uy = 0).
bool is_strict_minimum(const SystemParams& p, double u) {
    const double huu = phi_second(p, u);
    const double det = huu * 1.0 - 0.0;
    return huu > 0.0 && det > 0.0;
}

Equilibrium hyperbolic(const SystemParams& p, double u) {
    const double det = phi_second(p, u);
    if (det < 0.0) return {{u, 0.0}, EquilibriumKind::Saddle, det};
    if (det > 0.0 && is_strict_minimum(p, u)) return {{u, 0.0}, EquilibriumKind::Center, det};
    throw ContractError("non-hyperbolic equilibrium outside the cusp regime");
}

// Root of Phi(w) = level on a bracket where Phi is strictly monotone.
double solve_level(const SystemParams& p, double level, double a, double b) {
    auto g = [&](double w) { return phi(p, w) - level; };
    return roots::bisect(g, a, b).x;
}

} // namespace

std::vector<Equilibrium> classify(const SystemParams& p) {
    const Regime r = regime_of(p);
    if (r == Regime::CuspCase) {
        // u0 = k: y' = beta u (u - k)^2, an even-order zero, hence a cusp.
        return {hyperbolic(p, 0.0), Equilibrium{{p.u0, 0.0}, EquilibriumKind::Cusp, 0.0}};
    }
    return {hyperbolic(p, 0.0), hyperbolic(p, p.u0), hyperbolic(p, p.k)};
}

Annulus annulus(const SystemParams& p) {
    const Regime r = regime_of(p);
    const double u0 = p.u0;
    const double k = p.k;
    Annulus a{};
    a.regime = r;
    switch (r) {
    case Regime::CuspCase: throw NoAnnulus();
    case Regime::PosNarrow: {
        const double h2 = phi(p, k);
        const double w1 = solve_level(p, h2, 0.0, u0);
        a.center_u = u0;
        a.h = {phi(p, u0), h2};
        a.u_range = {w1, k};
        a.boundary_kind = BoundaryKind::Homoclinic;
        a.saddles = {k};
        a.boundary_point_w = w1;
        break;
    }
    case Regime::PosBoundary:
        a.center_u = u0;
        a.h = {phi(p, u0), 0.0};
        a.u_range = {0.0, k};
        a.boundary_kind = BoundaryKind::Heteroclinic;
        a.saddles = {0.0, k};
        break;
    case Regime::PosWide: {
        const double b = solve_level(p, 0.0, u0, k);
        a.center_u = u0;
        a.h = {phi(p, u0), 0.0};
        a.u_range = {0.0, b};
        a.boundary_kind = BoundaryKind::Homoclinic;
        a.saddles = {0.0};
        a.boundary_point_w = b;
        break;
    }
    case Regime::NegInside: {
        const double h2 = phi(p, u0);
        const double u1 = solve_level(p, h2, 0.0, k);
        a.center_u = 0.0;
        a.h = {0.0, h2};
        a.u_range = {u0, u1};
        a.boundary_kind = BoundaryKind::Homoclinic;
        a.saddles = {u0};
        a.boundary_point_w = u1;
        break;
    }
    case Regime::NegOutside: {
        const double h2 = phi(p, k);
        const double w2 = solve_level(p, h2, u0, 0.0);
        a.center_u = 0.0;
        a.h = {0.0, h2};
        a.u_range = {w2, k};
        a.boundary_kind = BoundaryKind::Homoclinic;
        a.saddles = {k};
        a.boundary_point_w = w2;
        break;
    }
    case Regime::Symmetric:
        a.center_u = 0.0;
        a.h = {0.0, 0.25 * p.beta * k * k * k * k};
        a.u_range = {-k, k};
        a.boundary_kind = BoundaryKind::Heteroclinic;
        a.saddles = {-k, k};
        break;
    }
    return a;
}

} // namespace twave
