#pragma once

#include "twave/model.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace twave {

/// The seven (u0, k) cases of the fixed-point classification.
enum class Regime {
    PosNarrow,    // 0 < u0 < k < 2u0
    PosBoundary,  // k = 2u0 > 0
    PosWide,      // 0 < 2u0 < k
    NegInside,    // -k < u0 < 0
    NegOutside,   // u0 < -k
    Symmetric,    // u0 = -k < 0
    CuspCase,     // u0 = k > 0
};

std::string_view to_string(Regime r);

enum class EquilibriumKind { Saddle, Center, Cusp };

std::string_view to_string(EquilibriumKind k);

struct Equilibrium {
    PhasePoint location;
    EquilibriumKind kind;
    double jacobian_det;
};

enum class BoundaryKind { Homoclinic, Heteroclinic };

std::string_view to_string(BoundaryKind k);

/// Open interval (lo, hi).
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    bool contains(double x) const { return lo < x && x < hi; }
    double width() const { return hi - lo; }
};

/// Maximal family of closed orbits around the center.
struct Annulus {
    Regime regime;
    double center_u;
    Interval h;        // (h1, h2): center energy, boundary-orbit energy
    Interval u_range;  // (alpha, B) with Phi(alpha) = Phi(B) = h2
    BoundaryKind boundary_kind;
    std::vector<double> saddles;            // saddle u-locations on the boundary orbit
    std::optional<double> boundary_point_w; // w1, u1, w2 or B, whichever bounds u_range
};

/// Unique regime tag for (u0, k).  Throws UnsupportedRegime for k < 0 or
/// 0 < k < u0, InvalidParams for u0 == 0 or k == 0.
Regime regime_of(const SystemParams& p);

/// False for PosWide (no theory) and CuspCase (no annulus).  Symmetric is
/// covered for even n only; odd n there gives G_n identically zero.
bool monotonicity_guaranteed(Regime r, int n);

/// Fixed points (0,0), (u0,0), (k,0) labelled saddle / center / cusp.
std::vector<Equilibrium> classify(const SystemParams& p);

/// Periodic annulus around the center.  Throws NoAnnulus for CuspCase.
Annulus annulus(const SystemParams& p);

} // namespace twave
