#include "twave/involution.hpp"

#include "twave/errors.hpp"
#include "twave/roots.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <string>

namespace twave {

double f_reaction(const SystemParams& p, double u) {
    return (u - p.u0) * (p.k - u);
}

std::string_view to_string(ClosedForm f) {
    switch (f) {
    case ClosedForm::DifferenceEven: return "difference-even";
    case ClosedForm::DifferenceOdd: return "difference-odd";
    case ClosedForm::EvenDecomposition: return "decomposition-even";
    case ClosedForm::OddDecomposition: return "decomposition-odd";
    case ClosedForm::Difference4mPlus2: return "difference-4m+2";
    case ClosedForm::Difference4m: return "difference-4m";
    case ClosedForm::Difference4mPlus1: return "difference-4m+1";
    case ClosedForm::Difference4mPlus3: return "difference-4m+3";
    }
    return "?";
}

bool is_difference_form(ClosedForm f) {
    return f != ClosedForm::EvenDecomposition && f != ClosedForm::OddDecomposition;
}

bool form_applies(ClosedForm f, int n) {
    if (n < 2) return false;
    switch (f) {
    case ClosedForm::DifferenceEven: return n % 2 == 0;
    case ClosedForm::DifferenceOdd: return n % 2 == 1;
    case ClosedForm::EvenDecomposition: return n % 2 == 0 && n >= 4;
    case ClosedForm::OddDecomposition: return n % 2 == 1;
    case ClosedForm::Difference4mPlus2: return n % 4 == 2;
    case ClosedForm::Difference4m: return n % 4 == 0;
    case ClosedForm::Difference4mPlus1: return n % 4 == 1;
    case ClosedForm::Difference4mPlus3: return n % 4 == 3;
    }
    return false;
}

std::vector<ClosedForm> forms_for(int n) {
    std::vector<ClosedForm> out;
    for (ClosedForm f : {ClosedForm::DifferenceEven, ClosedForm::DifferenceOdd,
                         ClosedForm::EvenDecomposition, ClosedForm::OddDecomposition,
                         ClosedForm::Difference4mPlus2, ClosedForm::Difference4m,
                         ClosedForm::Difference4mPlus1, ClosedForm::Difference4mPlus3}) {
        if (form_applies(f, n)) out.push_back(f);
    }
    return out;
}

InvolutionContext::InvolutionContext(const SystemParams& p)
    : InvolutionContext(p, twave::annulus(p)) {}

InvolutionContext::InvolutionContext(const SystemParams& p, Annulus a)
    : params_(p), annulus_(std::move(a)) {}

double involution_relation(const SystemParams& p, double u, double w) {
    // (Phi(u) - Phi(w)) / (u - w) expanded; has a simple zero at w = delta(u)
    // even as u approaches the center, unlike Phi(u) - Phi(w) itself.
    const double s1 = u + w;
    const double s2 = u * u + u * w + w * w;
    const double s3 = (u * u + w * w) * s1;
    return p.beta * (-0.25 * s3 + (p.k + p.u0) / 3.0 * s2 - 0.5 * p.k * p.u0 * s1);
}

double delta(const InvolutionContext& ctx, double u) {
    const Annulus& a = ctx.annulus();
    if (!a.u_range.contains(u))
        throw DomainError("delta: u = " + std::to_string(u) + " outside the involution range");
    const SystemParams& p = ctx.params();
    const double c = a.center_u;
    if (u == c) return c;
    if (a.regime == Regime::PosBoundary) return 2.0 * p.u0 - u;
    if (a.regime == Regime::Symmetric) return -u;

    auto rel = [&](double w) { return involution_relation(p, u, w); };
    const double lo = u > c ? a.u_range.lo : c;
    const double hi = u > c ? c : a.u_range.hi;
    return roots::bisect(rel, lo, hi, 0.0, 200).x;
}

double t_n(const InvolutionContext& ctx, int n, double u) {
    if (n < 0) throw ContractError("t_n: n must be nonnegative");
    const double w = delta(ctx, u);
    // sum_{i=0}^n u^{n-i} w^i, Horner in u.
    double acc = 0.0;
    double wpow = 1.0;
    std::vector<double> coeff(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        coeff[static_cast<std::size_t>(n - i)] = wpow;
        wpow *= w;
    }
    for (int j = n; j >= 0; --j) acc = acc * u + coeff[static_cast<std::size_t>(j)];
    return acc;
}

double t_n_prime_numerator(const SystemParams& p, int n, double u, double w) {
    return g_n(n, u, w) * u * f_reaction(p, u) + g_n(n, w, u) * w * f_reaction(p, w);
}

double t_n_prime(const InvolutionContext& ctx, int n, double u) {
    const SystemParams& p = ctx.params();
    const double w = delta(ctx, u);
    const double wf = w * f_reaction(p, w);
    const double scale = std::abs(w) * (std::abs(w) + std::abs(p.u0)) * (std::abs(w) + std::abs(p.k));
    if (wf == 0.0 || std::abs(wf) <= 64.0 * std::numeric_limits<double>::epsilon() * scale)
        throw SingularPoint("t_n_prime: w f(w) vanishes at w = " + std::to_string(w));
    return t_n_prime_numerator(p, n, u, w) / wf;
}

bool SignReport::all_passed() const {
    for (const auto& c : checks)
        if (!c.ok()) return false;
    return true;
}

namespace {

struct Claim {
    std::string name;
    bool applicable;
    // Returns true when the statement holds for (u, w).
    std::function<bool(double, double)> holds;
};

} // namespace

SignReport lemma_sign_suite(const InvolutionContext& ctx, int n,
                            const std::vector<double>& u_samples) {
    const SystemParams& p = ctx.params();
    const Regime r = ctx.annulus().regime;
    SignReport report{r, n, false, {}};
    const bool pos_narrow = r == Regime::PosNarrow;
    const bool inside = r == Regime::NegInside;
    const bool outside = r == Regime::NegOutside;
    report.applicable = pos_narrow || inside || outside;
    const bool even = n % 2 == 0;
    const bool odd3 = n % 2 == 1 && n >= 3;

    auto uf = [&](double x) { return x * f_reaction(p, x); };
    auto gu = [&](double u, double w) { return g_n(n, u, w); };

    std::vector<Claim> claims;
    claims.push_back({inside ? "u f(u) + w f(w) > 0" : "u f(u) + w f(w) < 0",
                      report.applicable,
                      [&](double u, double w) {
                          const double s = uf(u) + uf(w);
                          return inside ? s > 0.0 : s < 0.0;
                      }});
    claims.push_back({inside ? "u + delta(u) < 0" : "u + delta(u) > 0", inside || outside,
                      [&](double u, double w) { return inside ? u + w < 0.0 : u + w > 0.0; }});
    claims.push_back({"g_n(w,u) > g_n(u,w) > 0", pos_narrow, [&](double u, double w) {
                          const double a = gu(u, w);
                          return gu(w, u) > a && a > 0.0;
                      }});
    claims.push_back({inside ? "g_n(u,w) < 0 (even n)" : "g_n(w,u) > 0 (even n)",
                      (inside || outside) && even, [&](double u, double w) {
                          return inside ? gu(u, w) < 0.0 : gu(w, u) > 0.0;
                      }});
    claims.push_back({"g_n(w,u) > g_n(u,w) (even n)", (inside || outside) && even,
                      [&](double u, double w) { return g_diff(n, u, w) > 0.0; }});
    claims.push_back({inside ? "g_n(u,w) > 0 (odd n)" : "g_n(w,u) > 0 (odd n)",
                      (inside || outside) && odd3, [&](double u, double w) {
                          return inside ? gu(u, w) > 0.0 : gu(w, u) > 0.0;
                      }});
    claims.push_back({inside ? "g_n(u,w) > g_n(w,u) (odd n)" : "g_n(u,w) < g_n(w,u) (odd n)",
                      (inside || outside) && odd3, [&](double u, double w) {
                          const double d = g_diff(n, u, w);
                          return inside ? d < 0.0 : d > 0.0;
                      }});
    const bool decreasing = inside && !even;
    claims.push_back({decreasing ? "T_n'(u) < 0" : "T_n'(u) > 0", report.applicable,
                      [&](double u, double w) {
                          const double num = t_n_prime_numerator(p, n, u, w);
                          const double tp = num / (w * f_reaction(p, w));
                          return decreasing ? tp < 0.0 : tp > 0.0;
                      }});

    std::vector<double> ws;
    ws.reserve(u_samples.size());
    if (report.applicable)
        for (double u : u_samples) ws.push_back(delta(ctx, u));

    for (auto& claim : claims) {
        SignCheck check;
        check.name = claim.name;
        check.applicable = claim.applicable;
        if (claim.applicable) {
            for (std::size_t i = 0; i < u_samples.size(); ++i) {
                if (claim.holds(u_samples[i], ws[i])) {
                    ++check.passed;
                } else {
                    if (check.failed == 0) check.worst_u = u_samples[i];
                    ++check.failed;
                }
            }
        }
        report.checks.push_back(std::move(check));
    }
    return report;
}

std::vector<double> annulus_samples(const InvolutionContext& ctx, int count,
                                    std::uint64_t seed, double margin) {
    const double c = ctx.center();
    const double b = ctx.upper();
    const double pad = margin * (b - c);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(c + pad, b - pad);
    std::vector<double> out(static_cast<std::size_t>(count));
    for (auto& u : out) u = dist(rng);
    return out;
}

} // namespace twave
