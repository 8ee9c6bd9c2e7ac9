#pragma once

#include <cmath>

namespace twave {

/// Constants of the scaled traveling-wave system
///
///     u' = y,   y' = eps (alpha0 + alphan u^n) y - beta u (u - u0)(k - u).
///
/// eps == 0 selects the unperturbed Hamiltonian system.
struct SystemParams {
    double beta = 1.0;
    double u0 = 1.0;
    double k = 2.0;
    int n = 2;
    double alpha0 = 0.0;
    double alphan = 0.0;
    double epsilon = 0.0;

    /// Throws InvalidParams unless beta > 0, n >= 2, u0 != 0, k != 0, eps >= 0
    /// and every field is finite.
    void validate() const;

    /// Copy with a different perturbation size.
    SystemParams with_epsilon(double eps) const {
        SystemParams p = *this;
        p.epsilon = eps;
        return p;
    }
};

/// Constants of the original reaction-convection-diffusion equation
/// u_t + (a0 + an u^n) u_x = D u_xx + beta_tilde u (u - u0)(k - u),
/// together with the wave speed c and the perturbation scale eps.
struct PdeParams {
    double a0 = 0.0;
    double an = 0.0;
    double D = 1.0;
    double beta_tilde = 1.0;
    double c = 0.0;
    double epsilon = 0.1;
};

struct PhasePoint {
    double u = 0.0;
    double y = 0.0;
};

/// Tangent vector (du/deta, dy/deta).
struct Tangent {
    double du = 0.0;
    double dy = 0.0;
};

struct EnergyLevel {
    double h = 0.0;
};

/// Potential Phi(u) = beta (-u^4/4 + (k+u0) u^3/3 - k u0 u^2/2).
double phi(const SystemParams& p, double u);

/// Phi'(u) = beta u (u - u0)(k - u).
double phi_prime(const SystemParams& p, double u);

/// Phi''(u) = beta (-3u^2 + 2(u0+k)u - k u0).
double phi_second(const SystemParams& p, double u);

/// H(u, y) = y^2/2 + Phi(u).
double hamiltonian(const SystemParams& p, PhasePoint x);

Tangent vector_field(const SystemParams& p, PhasePoint x);

/// Scaled system from the PDE constants: beta = beta_tilde/D,
/// alpha0 = (a0 - c)/(D eps), alphan = an/(D eps).  u0, k and n pass through
/// unscaled.  Throws InvalidParams when eps <= 0 or D <= 0.
SystemParams map_pde_params(const PdeParams& pde, double u0, double k, int n);

/// Inverse of map_pde_params for a given diffusion D and wave speed c.
PdeParams unmap_pde_params(const SystemParams& p, double D, double c);

/// Relative equality used for regime boundaries (k == 2u0, u0 == -k, ...).
inline bool nearly_equal(double a, double b, double rel = 1e-12) {
    return std::abs(a - b) <= rel * std::fmax(std::abs(a), std::abs(b));
}

} // namespace twave
