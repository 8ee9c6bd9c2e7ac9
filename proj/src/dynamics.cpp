#include "twave/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace twave {

std::string_view to_string(Termination t) {
    return t == Termination::Completed ? "completed" : "left-bounds";
}

std::string_view to_string(Stability s) {
    switch (s) {
    case Stability::Stable: return "stable";
    case Stability::Unstable: return "unstable";
    case Stability::Inconclusive: return "inconclusive";
    }
    return "?";
}

std::string_view to_string(CycleOutcome o) {
    switch (o) {
    case CycleOutcome::Found: return "found";
    case CycleOutcome::None: return "none";
    case CycleOutcome::Inconclusive: return "inconclusive";
    }
    return "?";
}

double Trajectory::energy_drift() const {
    if (samples.empty()) return 0.0;
    const double h0 = hamiltonian(params_used, initial().point);
    double worst = 0.0;
    for (const auto& s : samples) worst = std::max(worst, std::abs(hamiltonian(params_used, s.point) - h0));
    return worst;
}

namespace {

struct Field {
    const SystemParams* p;
    double sign;

    ode::State operator()(const ode::State& x) const {
        const Tangent t = vector_field(*p, {x[0], x[1]});
        return {sign * t.du, sign * t.dy};
    }
};

void check_tolerances(const ode::Tolerances& tol) {
    if (!(tol.rel > 0.0) || !(tol.abs > 0.0))
        throw ContractError("integration tolerances must be positive");
}

} // namespace

Trajectory integrate(const SystemParams& p, PhasePoint initial, double eta_span,
                     const IntegrateOptions& opt) {
    p.validate();
    check_tolerances(opt.tol);
    if (!(eta_span > 0.0)) throw ContractError("eta span must be positive");
    if (!std::isfinite(initial.u) || !std::isfinite(initial.y))
        throw ContractError("initial point must be finite");

    const bool backward = opt.direction == Direction::Backward;
    Field f{&p, backward ? -1.0 : 1.0};

    Trajectory traj;
    traj.params_used = p;
    traj.tolerances = opt.tol;
    traj.samples.push_back({0.0, initial});
    bool left = false;

    auto observe = [&](double, const ode::State&, const ode::State&, double t1, const ode::State& x1,
                       const ode::State&) {
        traj.samples.push_back({t1, {x1[0], x1[1]}});
        if (std::max(std::abs(x1[0]), std::abs(x1[1])) > opt.blowup_bound) {
            left = true;
            return false;
        }
        return true;
    };

    ode::State x{initial.u, initial.y};
    ode::SolveOptions so;
    so.tol = opt.tol;
    so.max_steps = opt.max_steps;
    const ode::Status st = ode::solve(f, 0.0, x, eta_span, so, observe);

    if (backward) {
        std::reverse(traj.samples.begin(), traj.samples.end());
        for (auto& s : traj.samples) s.eta = -s.eta;
        traj.origin = traj.samples.size() - 1;
    }
    traj.termination = left ? Termination::LeftBounds : Termination::Completed;

    if (st == ode::Status::StepUnderflow || st == ode::Status::MaxSteps) {
        const TrajectorySample& last = backward ? traj.samples.front() : traj.samples.back();
        throw IntegrationFailure(std::string(st == ode::Status::StepUnderflow ? "step-size underflow"
                                                                                : "step budget exhausted") +
                                     " at eta = " + std::to_string(last.eta),
                                 std::move(traj));
    }
    return traj;
}

namespace {

// Crossing of y = 0 inside the accepted step (t0, x0) -> (t0 + h, x1).  A
// cubic Hermite interpolant gives the starting guess; Newton then corrects it
// against partial DOPRI steps taken from x0.
double refine_crossing(Field& f, const ode::State& x0, const ode::State& f0, const ode::State& x1,
                       const ode::State& f1, double h, ode::State& at) {
    auto hermite = [&](double s) {
        const double s2 = s * s;
        const double s3 = s2 * s;
        return (2 * s3 - 3 * s2 + 1) * x0[1] + (s3 - 2 * s2 + s) * h * f0[1] + (-2 * s3 + 3 * s2) * x1[1] +
               (s3 - s2) * h * f1[1];
    };
    double lo = 0.0;
    double hi = 1.0;
    const bool lo_neg = x0[1] < 0.0;
    for (int i = 0; i < 60; ++i) {
        const double m = 0.5 * (lo + hi);
        if ((hermite(m) < 0.0) == lo_neg) lo = m;
        else hi = m;
    }
    double tau = 0.5 * (lo + hi) * h;

    const double scale = std::max({1.0, std::abs(x0[1]), std::abs(x1[1])});
    for (int it = 0; it < 12; ++it) {
        at = tau == 0.0 ? x0 : ode::dopri_step(f, x0, f0, tau).x5;
        const double g = at[1];
        if (std::abs(g) <= 1e-14 * scale) break;
        const double dg = f(at)[1];
        if (dg == 0.0) break;
        const double next = std::clamp(tau - g / dg, std::min(0.0, h), std::max(0.0, h));
        if (next == tau) break;
        tau = next;
    }
    at = tau == 0.0 ? x0 : ode::dopri_step(f, x0, f0, tau).x5;
    return tau;
}

} // namespace

SectionCrossing poincare_return(const SystemParams& p, double u_start, const ReturnOptions& opt) {
    p.validate();
    check_tolerances(opt.tol);
    const Annulus a = annulus(p);
    const double c = a.center_u;
    if (!a.u_range.contains(u_start) || u_start == c)
        throw DomainError("section point u = " + std::to_string(u_start) + " is not inside the annulus");

    const double side = u_start > c ? 1.0 : -1.0;
    const double dir = -phi_prime(p, u_start) > 0.0 ? 1.0 : -1.0;
    const double margin = opt.escape_margin * a.h.width();
    const double h_lo = a.h.lo - margin;
    const double h_hi = a.h.hi + margin;

    Field f{&p, 1.0};
    std::optional<SectionCrossing> found;
    std::optional<std::pair<double, PhasePoint>> escaped;

    auto observe = [&](double t0, const ode::State& x0, const ode::State& f0, double t1,
                       const ode::State& x1, const ode::State& f1) {
        const double hx = hamiltonian(p, {x1[0], x1[1]});
        if (hx < h_lo || hx > h_hi) {
            escaped = std::make_pair(t1, PhasePoint{x1[0], x1[1]});
            return false;
        }
        if (x0[1] * dir < 0.0 && x1[1] * dir >= 0.0) {
            ode::State at{};
            const double tau = refine_crossing(f, x0, f0, x1, f1, t1 - t0, at);
            if ((at[0] - c) * side > 0.0) {
                const double dy = f(at)[1];
                found = SectionCrossing{t0 + tau, at[0], at[1], dy > 0.0 ? 1 : (dy < 0.0 ? -1 : 0)};
                return false;
            }
        }
        return true;
    };

    ode::State x{u_start, 0.0};
    ode::SolveOptions so;
    so.tol = opt.tol;
    const ode::Status st = ode::solve(f, 0.0, x, opt.max_eta, so, observe);

    if (escaped)
        throw EscapeError("orbit left the annulus before returning to the section", escaped->first,
                          escaped->second);
    if (found) return *found;
    if (st == ode::Status::StepUnderflow || st == ode::Status::MaxSteps)
        throw AccuracyError("integration failed before the return to the section",
                            std::numeric_limits<double>::quiet_NaN());
    throw AccuracyError("no return to the section within eta = " + std::to_string(opt.max_eta),
                        std::numeric_limits<double>::quiet_NaN());
}

CycleReport find_limit_cycle(const SystemParams& p, const CycleOptions& opt) {
    p.validate();
    if (!(p.epsilon > 0.0)) throw InvalidParams("perturbation required: epsilon must be positive");
    const Annulus a = annulus(p);

    CycleReport rep;
    if (p.alphan == 0.0) {
        if (p.alpha0 == 0.0) throw InvalidParams("perturbation required: alpha0 and alphan are both zero");
        rep.outcome = CycleOutcome::None;
        rep.reason = "alphan = 0: A(h) = alpha0 A_0(h) has no zero";
        return rep;
    }
    rep.ratio = p.alpha0 / p.alphan;
    rep.interval = ratio_interval(p, p.n, opt.abelian);
    rep.warnings = rep.interval.warnings;
    if (rep.interval.empty) {
        rep.reason = "admissible ratio interval is empty";
        return rep;
    }
    if (!rep.interval.contains(rep.ratio)) {
        rep.reason = "ratio outside the admissible interval";
        return rep;
    }
    try {
        rep.predicted_h = solve_h_for_ratio(p, p.n, rep.ratio, opt.abelian);
    } catch (const NoZero& e) {
        rep.reason = e.what();
        return rep;
    }

    const OrbitGeometry geo = turning_points(p, a, rep.predicted_h, opt.abelian);
    rep.initial_guess_u = geo.u_minus;

    const double c = a.center_u;
    const double lo = a.u_range.lo;
    const double span = c - lo;
    auto inside = [&](double u) { return u > lo + 1e-9 * span && u < c - 1e-9 * span; };
    auto excess = [&](double u) { return poincare_return(p, u, opt.ret).u - u; };

    // Secant on P(u) - u; an iterate whose orbit escapes is pulled halfway
    // back towards the previous one.
    double ua = geo.u_minus;
    double ub = geo.u_minus + 1e-3 * span;
    double fa = excess(ua);
    double fb = excess(ub);
    rep.history = {ua, ub};
    bool converged = false;
    for (int it = 0; it < opt.max_iterations; ++it) {
        rep.iterations = it + 1;
        if (fb == fa) break;
        double un = ub - fb * (ub - ua) / (fb - fa);
        if (!inside(un)) un = 0.5 * (ub + std::clamp(un, lo, c));
        double fn = 0.0;
        bool ok = false;
        for (int tries = 0; tries < 30 && !ok; ++tries) {
            try {
                fn = excess(un);
                ok = true;
            } catch (const EscapeError&) {
                un = 0.5 * (un + ub);
            }
        }
        if (!ok) break;
        rep.history.push_back(un);
        ua = ub;
        fa = fb;
        ub = un;
        fb = fn;
        if (std::abs(ub - ua) <= opt.u_tol * std::max(1.0, std::abs(ub)) || fb == 0.0) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        rep.outcome = CycleOutcome::Inconclusive;
        rep.reason = "secant iteration did not converge";
        rep.fixed_point_u = ub;
        return rep;
    }

    rep.outcome = CycleOutcome::Found;
    rep.fixed_point_u = ub;
    rep.energy_h = hamiltonian(p, {ub, 0.0});
    const double s = opt.slope_step;
    rep.return_map_slope =
        (poincare_return(p, ub + s, opt.ret).u - poincare_return(p, ub - s, opt.ret).u) / (2.0 * s);
    const double gap = std::abs(rep.return_map_slope) - 1.0;
    if (std::abs(gap) < opt.slope_band) rep.stability = Stability::Inconclusive;
    else rep.stability = gap > 0.0 ? Stability::Unstable : Stability::Stable;
    return rep;
}

std::vector<PortraitEntry> phase_portrait(const SystemParams& p, const std::vector<PhasePoint>& seeds,
                                          double eta_span, const PortraitOptions& opt) {
    p.validate();
    const bool both = opt.both_directions.value_or(p.epsilon == 0.0);
    IntegrateOptions io;
    io.tol = opt.tol;
    io.blowup_bound = opt.bound_scale * std::max({1.0, std::abs(p.u0), std::abs(p.k)});

    std::vector<PortraitEntry> out;
    out.reserve(seeds.size());
    for (const PhasePoint& seed : seeds) {
        PortraitEntry e{seed, std::nullopt, {}};
        try {
            io.direction = Direction::Forward;
            Trajectory fwd = integrate(p, seed, eta_span, io);
            if (both) {
                io.direction = Direction::Backward;
                Trajectory joined = integrate(p, seed, eta_span, io);
                joined.samples.insert(joined.samples.end(), fwd.samples.begin() + 1, fwd.samples.end());
                if (fwd.termination == Termination::LeftBounds) joined.termination = Termination::LeftBounds;
                e.trajectory = std::move(joined);
            } else {
                e.trajectory = std::move(fwd);
            }
        } catch (const Error& err) {
            e.error = err.what();
        }
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<PhasePoint> default_seeds(const SystemParams& p) {
    const Annulus a = annulus(p);
    const double c = a.center_u;
    const double reach = a.u_range.hi - c;
    std::vector<PhasePoint> seeds;
    for (double frac : {0.2, 0.4, 0.6, 0.8, 0.95}) seeds.push_back({c + frac * reach, 0.0});
    const double d = 1e-2 * std::max({1.0, std::abs(p.u0), std::abs(p.k)});
    for (double s : a.saddles) {
        seeds.push_back({s - d, 0.0});
        seeds.push_back({s + d, 0.0});
    }
    return seeds;
}

} // namespace twave
