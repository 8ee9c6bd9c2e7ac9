#pragma once

#include "twave/equilibria.hpp"
#include "twave/model.hpp"
#include "twave/rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace twave {

// ---------------------------------------------------------------------------
// Polynomial kernel g_n(u, w) = sum_{i=1..n} i w^{i-1} u^{n-i} and its
// closed-form rearrangements.  Templated so the identities can be checked in
// exact rational arithmetic as well as evaluated in double precision.
// ---------------------------------------------------------------------------

/// f(u) = (u - u0)(k - u), so that Phi'(u) = beta u f(u).
double f_reaction(const SystemParams& p, double u);

template <class T>
T g_n(int n, const T& u, const T& w) {
    // Horner in u with w-dependent coefficients: sum_i i w^{i-1} u^{n-i}.
    T acc(0);
    T wpow(1);
    std::vector<T> coeff(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        coeff[static_cast<std::size_t>(i - 1)] = T(i) * wpow;
        wpow *= w;
    }
    for (int i = 1; i <= n; ++i) {
        acc *= u;
        acc += coeff[static_cast<std::size_t>(i - 1)];
    }
    return acc;
}

/// Named rearrangements of g_n.  The *Difference* forms evaluate
/// g_n(w,u) - g_n(u,w); the *Decomposition* forms evaluate g_n(u,w).
enum class ClosedForm {
    DifferenceEven,       // n even:  sum_{i=1}^{n/2} (n+1-2i)(uw)^{i-1}(u^{n+1-2i} - w^{n+1-2i})
    DifferenceOdd,        // n odd:   same sum up to (n-1)/2
    EvenDecomposition,    // n even, n >= 4: powers regrouped around (u + w)
    OddDecomposition,     // n odd,  n >= 3
    Difference4mPlus2,    // n = 4m+2
    Difference4m,         // n = 4m,   m >= 1
    Difference4mPlus1,    // n = 4m+1, m >= 1
    Difference4mPlus3,    // n = 4m+3
};

std::string_view to_string(ClosedForm f);

bool is_difference_form(ClosedForm f);

/// Whether `f` is a valid rearrangement for this n.
bool form_applies(ClosedForm f, int n);

/// All closed forms valid for n.
std::vector<ClosedForm> forms_for(int n);

template <class T>
T g_diff_closed_form(ClosedForm form, int n, const T& u, const T& w);

/// g_n(w,u) - g_n(u,w) through the residue-class form matching n mod 4.
template <class T>
T g_diff(int n, const T& u, const T& w);

// ---------------------------------------------------------------------------
// Involution on the annulus
// ---------------------------------------------------------------------------

/// Immutable pairing data for one parameter set: the annulus and the
/// potential it is built on.
class InvolutionContext {
public:
    explicit InvolutionContext(const SystemParams& p);
    InvolutionContext(const SystemParams& p, Annulus a);

    const SystemParams& params() const { return params_; }
    const Annulus& annulus() const { return annulus_; }
    double center() const { return annulus_.center_u; }
    /// Upper end B of the u-range; samples with u in (center, B) are on the
    /// side the monotonicity argument works with.
    double upper() const { return annulus_.u_range.hi; }
    double lower() const { return annulus_.u_range.lo; }

private:
    SystemParams params_;
    Annulus annulus_;
};

/// (Phi(u) - Phi(w)) / (u - w) as a polynomial; vanishes on the involution graph.
double involution_relation(const SystemParams& p, double u, double w);

/// w = delta(u) on the other side of the center with Phi(w) = Phi(u).
/// Throws DomainError outside the open u-range.
double delta(const InvolutionContext& ctx, double u);

/// T_n(u) = (n+1) int_w^u t^n dt / (u - w) = sum_{i=0}^n u^{n-i} w^i, w = delta(u).
double t_n(const InvolutionContext& ctx, int n, double u);

/// T_n'(u) = {g_n(u,w) u f(u) + g_n(w,u) w f(w)} / (w f(w)).
/// Throws SingularPoint where w f(w) vanishes.
double t_n_prime(const InvolutionContext& ctx, int n, double u);

/// g_n(u,w) u f(u) + g_n(w,u) w f(w): the numerator whose sign decides T_n'.
double t_n_prime_numerator(const SystemParams& p, int n, double u, double w);

// ---------------------------------------------------------------------------
// Sign checks on the involution graph
// ---------------------------------------------------------------------------

struct SignCheck {
    std::string name;       // e.g. "u f(u) + w f(w) < 0"
    bool applicable = true; // false when the regime/n is outside the claim
    int passed = 0;
    int failed = 0;
    double worst_u = 0.0;   // a failing sample, if any

    bool ok() const { return !applicable || failed == 0; }
};

struct SignReport {
    Regime regime;
    int n;
    bool applicable;  // false outside PosNarrow / NegInside / NegOutside
    std::vector<SignCheck> checks;

    bool all_passed() const;
};

/// Evaluate every sign statement that applies to the context's regime and n
/// at w = delta(u) for each sample.
SignReport lemma_sign_suite(const InvolutionContext& ctx, int n,
                            const std::vector<double>& u_samples);

/// `count` deterministic pseudo-random samples in (center, B), staying
/// `margin * (B - center)` away from both ends.
std::vector<double> annulus_samples(const InvolutionContext& ctx, int count,
                                    std::uint64_t seed = 12345, double margin = 1e-3);

} // namespace twave

#include "twave/involution_forms.inl"
