#pragma once

#include <gmpxx.h>

#include <random>

namespace twave {

/// Exact rational with arbitrary-precision numerator and denominator.
using Rational = mpq_class;

/// Pair of exact rationals used when checking polynomial identities.
struct RationalPair {
    Rational u;
    Rational w;
};

/// x^e for e >= 0; works for double and Rational alike.
template <class T>
T ipow(const T& x, int e) {
    T result(1);
    T base(x);
    while (e > 0) {
        if (e & 1) result *= base;
        base *= base;
        e >>= 1;
    }
    return result;
}

/// Random rational p/q with p, q uniform in [1, max_term], canonicalized,
/// carrying the requested sign (+1 or -1).
inline Rational random_rational(std::mt19937_64& rng, int sign, long max_term = 1000) {
    std::uniform_int_distribution<long> dist(1, max_term);
    Rational r(dist(rng) * sign, dist(rng));
    r.canonicalize();
    return r;
}

} // namespace twave
