#include "twave/model.hpp"

#include "twave/errors.hpp"

#include <string>

namespace twave {

void SystemParams::validate() const {
    auto finite = [](double v) { return std::isfinite(v); };
    if (!finite(beta) || !finite(u0) || !finite(k) || !finite(alpha0) ||
        !finite(alphan) || !finite(epsilon))
        throw InvalidParams("parameters must be finite");
    if (!(beta > 0.0)) throw InvalidParams("beta must be positive");
    if (n < 2) throw InvalidParams("n must be an integer >= 2");
    if (u0 == 0.0) throw InvalidParams("u0 = 0 gives a degenerate root at the origin");
    if (k == 0.0) throw InvalidParams("k = 0 gives a degenerate root at the origin");
    if (epsilon < 0.0) throw InvalidParams("epsilon must be nonnegative");
}

double phi(const SystemParams& p, double u) {
    // beta u^2 ((-u/4 + (k+u0)/3) u - k u0/2)
    const double inner = (-0.25 * u + (p.k + p.u0) / 3.0) * u - 0.5 * p.k * p.u0;
    return p.beta * u * u * inner;
}

double phi_prime(const SystemParams& p, double u) {
    return p.beta * u * (u - p.u0) * (p.k - u);
}

double phi_second(const SystemParams& p, double u) {
    return p.beta * ((-3.0 * u + 2.0 * (p.u0 + p.k)) * u - p.k * p.u0);
}

double hamiltonian(const SystemParams& p, PhasePoint x) {
    return 0.5 * x.y * x.y + phi(p, x.u);
}

Tangent vector_field(const SystemParams& p, PhasePoint x) {
    double dy = -phi_prime(p, x.u);
    if (p.epsilon != 0.0) {
        dy += p.epsilon * (p.alpha0 + p.alphan * std::pow(x.u, p.n)) * x.y;
    }
    return {x.y, dy};
}

SystemParams map_pde_params(const PdeParams& pde, double u0, double k, int n) {
    if (!(pde.epsilon > 0.0))
        throw InvalidParams("invalid reduction: epsilon must be positive");
    if (!(pde.D > 0.0)) throw InvalidParams("invalid reduction: D must be positive");
    if (!(pde.beta_tilde > 0.0))
        throw InvalidParams("invalid reduction: beta_tilde must be positive");
    SystemParams p;
    p.beta = pde.beta_tilde / pde.D;
    p.alpha0 = (pde.a0 - pde.c) / (pde.D * pde.epsilon);
    p.alphan = pde.an / (pde.D * pde.epsilon);
    p.epsilon = pde.epsilon;
    p.u0 = u0;
    p.k = k;
    p.n = n;
    return p;
}

PdeParams unmap_pde_params(const SystemParams& p, double D, double c) {
    PdeParams pde;
    pde.D = D;
    pde.c = c;
    pde.epsilon = p.epsilon;
    pde.beta_tilde = p.beta * D;
    pde.a0 = c + p.epsilon * p.alpha0 * D;
    pde.an = p.epsilon * p.alphan * D;
    return pde;
}

} // namespace twave
