#pragma once

#include "twave/abelian.hpp"
#include "twave/equilibria.hpp"
#include "twave/errors.hpp"
#include "twave/model.hpp"
#include "twave/ode.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace twave {

struct TrajectorySample {
    double eta;
    PhasePoint point;
};

enum class Termination {
    Completed,   // reached the end of the eta span
    LeftBounds,  // |u| or |y| exceeded the blow-up bound
};

std::string_view to_string(Termination t);

/// Integrated orbit with samples at every accepted step, eta strictly
/// increasing.  Backward runs are stored with eta in [-span, 0], so the
/// starting point is then the last sample.
struct Trajectory {
    std::vector<TrajectorySample> samples;
    SystemParams params_used;
    ode::Tolerances tolerances;
    Termination termination = Termination::Completed;
    std::size_t origin = 0;  // index of the sample the run started from

    const TrajectorySample& front() const { return samples.front(); }
    const TrajectorySample& back() const { return samples.back(); }

    const TrajectorySample& initial() const { return samples[origin]; }

    /// max |H(sample) - H(initial)|.
    double energy_drift() const;
};

/// Integration stopped by step-size underflow or the step budget; carries
/// the part computed before the failure.
class IntegrationFailure : public Error {
public:
    IntegrationFailure(const std::string& what, Trajectory partial)
        : Error(what), partial_(std::move(partial)) {}
    const Trajectory& partial() const noexcept { return partial_; }

private:
    Trajectory partial_;
};

/// The orbit left the closed annulus (with margin) before returning to the
/// section.  For an outward spiral this happens past the boundary orbit.
class EscapeError : public Error {
public:
    EscapeError(const std::string& what, double eta, PhasePoint where)
        : Error(what), eta_(eta), where_(where) {}
    double eta() const noexcept { return eta_; }
    PhasePoint where() const noexcept { return where_; }

private:
    double eta_;
    PhasePoint where_;
};

enum class Direction { Forward, Backward };

struct IntegrateOptions {
    ode::Tolerances tol{};
    Direction direction = Direction::Forward;
    /// Stop with Termination::LeftBounds once max(|u|, |y|) exceeds this.
    double blowup_bound = 1e8;
    long max_steps = 5'000'000;
};

/// Adaptive DOPRI5(4) solution of the traveling-wave system over an eta span
/// of the given (positive) length.  Throws ContractError for nonpositive
/// tolerances or span, IntegrationFailure when the step size underflows.
Trajectory integrate(const SystemParams& p, PhasePoint initial, double eta_span,
                     const IntegrateOptions& opt = {});

struct SectionCrossing {
    double eta;
    double u;
    double y;       // residual at the refined crossing
    int direction;  // sign of dy/deta at the crossing
};

struct ReturnOptions {
    ode::Tolerances tol{};
    /// Give up when no return happens within this eta.
    double max_eta = 1e4;
    /// Escape margin as a fraction of h2 - h1.
    double escape_margin = 1e-3;
};

/// First return to the section {y = 0} on the same side of the center as
/// u_start, crossing in the same direction as the flow at (u_start, 0).
/// Throws EscapeError when H leaves [h1 - m, h2 + m] first and DomainError
/// when (u_start, 0) is not inside the annulus.
SectionCrossing poincare_return(const SystemParams& p, double u_start,
                                const ReturnOptions& opt = {});

enum class Stability { Stable, Unstable, Inconclusive };
std::string_view to_string(Stability s);

enum class CycleOutcome { Found, None, Inconclusive };
std::string_view to_string(CycleOutcome o);

struct CycleOptions {
    ReturnOptions ret{};
    AbelianOptions abelian{};
    int max_iterations = 50;
    double slope_step = 1e-4;
    double slope_band = 1e-3;
    double u_tol = 1e-10;
};

struct CycleReport {
    CycleOutcome outcome = CycleOutcome::None;
    std::string reason;  // why there is no cycle, or why the search failed
    double ratio = 0.0;  // alpha0 / alphan
    RatioInterval interval;
    double predicted_h = 0.0;
    double initial_guess_u = 0.0;
    double fixed_point_u = 0.0;
    double energy_h = 0.0;
    Stability stability = Stability::Inconclusive;
    double return_map_slope = 0.0;
    int iterations = 0;
    std::vector<double> history;  // secant iterates
    std::vector<std::string> warnings;
};

/// Limit cycle of the perturbed system as a fixed point of the return map.
///
/// The ratio alpha0/alphan must lie in the admissible interval, otherwise the
/// outcome is None.  The secant search starts from the left turning point of
/// the level predicted by the Abelian integral.  Throws InvalidParams when
/// eps == 0 ("perturbation required").
CycleReport find_limit_cycle(const SystemParams& p, const CycleOptions& opt = {});

struct PortraitEntry {
    PhasePoint seed;
    std::optional<Trajectory> trajectory;
    std::string error;  // empty on success
};

struct PortraitOptions {
    ode::Tolerances tol{};
    /// Blow-up bound in units of max(1, |u0|, |k|).
    double bound_scale = 4.0;
    /// Integrate backward too; defaults to eps == 0.
    std::optional<bool> both_directions;
};

/// One trajectory per seed.  For the unperturbed system each trajectory
/// joins a backward and a forward run through the seed so that separatrices
/// are traced on both sides of a saddle.
std::vector<PortraitEntry> phase_portrait(const SystemParams& p,
                                          const std::vector<PhasePoint>& seeds, double eta_span,
                                          const PortraitOptions& opt = {});

/// Seeds inside the annulus plus points next to each saddle.  Throws
/// NoAnnulus for the cusp regime.
std::vector<PhasePoint> default_seeds(const SystemParams& p);

} // namespace twave
