#pragma once

#include <stdexcept>
#include <string>

namespace casq {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

// Steady-state null space has dimension > 1 (e.g. a decoupled dark sector).
struct DegenerateSteadyState : Error {
    using Error::Error;
};

// No normalizable stationary solution (above-threshold dynamics, or a solve
// whose result violates the density-matrix invariants).
struct Unstable : Error {
    double residual = 0.0;
    Unstable(const std::string& msg, double resid) : Error(msg), residual(resid) {}
};

// Shifted resolvent (L - i*omega) is rank-deficient at some grid frequency.
struct ResolventSingular : Error {
    double omega = 0.0;
    ResolventSingular(const std::string& msg, double w) : Error(msg), omega(w) {}
};

// Top photon sector carries more population than the configured bound.
struct TruncationInsufficient : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

}  // namespace casq
