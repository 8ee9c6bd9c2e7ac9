#pragma once

#include <stdexcept>
#include <string>

namespace twave {

/// Base for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parameters violate a model invariant (beta <= 0, n < 2, u0 == 0, ...).
class InvalidParams : public Error {
public:
    using Error::Error;
};

/// (u0, k) lies outside the parameter ranges the analysis covers.
class UnsupportedRegime : public Error {
public:
    explicit UnsupportedRegime(const std::string& what)
        : Error("unsupported regime: " + what) {}
};

/// The cusp regime has no center and therefore no periodic annulus.
class NoAnnulus : public Error {
public:
    NoAnnulus() : Error("no annulus: the unperturbed system has no center") {}
};

/// Argument outside the domain of a map (e.g. u outside the involution range).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Evaluation hit a removable or genuine singularity.
class SingularPoint : public Error {
public:
    using Error::Error;
};

/// Caller asked for something the routine's contract forbids.
class ContractError : public Error {
public:
    using Error::Error;
};

/// Energy level too close to an annulus endpoint for a non-degenerate orbit.
class DegenerateOrbit : public Error {
public:
    using Error::Error;
};

/// A numerical procedure did not reach the requested accuracy.
class AccuracyError : public Error {
public:
    AccuracyError(const std::string& what, double best_estimate)
        : Error(what), best_estimate_(best_estimate) {}
    double best_estimate() const noexcept { return best_estimate_; }

private:
    double best_estimate_;
};

/// The requested ratio alpha0/alphan admits no zero of the Abelian integral.
class NoZero : public Error {
public:
    using Error::Error;
};

} // namespace twave
