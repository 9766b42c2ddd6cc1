#pragma once

#include <span>

#include "casq/opa.hpp"

namespace casq {

/// Linear Heisenberg-Langevin model for the cavity amplitudes A = (a, a†):
///   dA/dt = M A + N(t),  N = (η, η†),  η = √(2κ) a_in + √(2γ′) a_in^at,
/// with both inputs vacuum white noise. The detected output channel is κ,
/// with a_out = √(2κ) a - a_in.
struct LinearLangevinModel {
    Eigen::Matrix2cd drift;  // conjugate-pair structure enforced
    double kappa;
    double gamma_prime;

    LinearLangevinModel(Eigen::Matrix2cd m, double kappa, double gamma_prime);

    double kappa_prime() const { return kappa + gamma_prime; }
    // Both drift eigenvalues have negative real part.
    bool stable() const;
    std::array<Complex, 2> eigenvalues() const;
};

/// Time-periodic correction matrices of the vibrating-atom equations:
/// V = [[iθ/2, iα/2], [-iα/2, -iθ/2]], B = (-iβ, iβ), oscillation at ν.
struct PeriodicCorrection {
    Eigen::Matrix2cd V;
    Eigen::Vector2cd B;
    double theta;
    double alpha;
    double beta;
    MotionParams motion;

    PeriodicCorrection(double theta, double alpha, double beta, MotionParams motion);
};

/// M = [[-κ′ - i(θ̄-δ_c), -iᾱ], [iᾱ, -κ′ + i(θ̄-δ_c)]] with κ′ from the
/// effective coefficients. Meant for the λ/2 pattern, where the linear drive
/// enters only through B.
LinearLangevinModel build_drift(const SystemParams& p, const EffectiveCoefficients& eff);

/// Period-averaged model: drift → M + k²q̄² V, i.e. α → α̃, θ → θ̃. With
/// recompensate_detuning (default) the laser is retuned to the shifted Stark
/// value δ̃_c = θ(1 - k²q̄²/2), which removes the residual detuning; at the
/// λ/2 operating point (θ = δ_c) and k_qbar = 0 the model is unchanged.
LinearLangevinModel secular_average(const LinearLangevinModel& model,
                                    const PeriodicCorrection& corr,
                                    bool recompensate_detuning = true);

/// Magnitudes of the terms dropped by the secular approximation, relative to
/// the kept correction k²q̄² V (scale |α|/2). The E-term bound is the
/// worst-case phase difference φ2 - φ1 = π/4 (|sin 2(φ2-φ1)| = 1); the actual
/// sine factor at the given phases is reported alongside.
struct SecularDroppedTerms {
    double ratio_c_damping;    // (|θ|κ′/8ν) / (|α|/2)
    double ratio_c_detuning;   // (|θ(θ-δ_c)|/8ν) / (|α|/2)
    double ratio_e;            // (k²q̄²|θβ|/16ν) / (|α|/2), worst-case phases
    double e_phase_factor;     // |sin 2(φ2 - φ1)| actually in effect
    double max_ratio() const;
};

SecularDroppedTerms secular_dropped_terms(const LinearLangevinModel& model,
                                          const PeriodicCorrection& corr);

/// Exact frequency-domain output spectrum of the 2x2 linear model driven by
/// unit-spectral-density vacuum inputs at rates 2κ and 2γ′; the detected
/// channel is κ. Independent route to the closed-form OPA spectrum.
/// Throws Unstable when the drift is not Hurwitz.
SpectrumSeries langevin_output_spectrum(const LinearLangevinModel& model, double phase,
                                        std::span<const double> omega_grid);

/// Coarse-grained correlation of the period-averaged noise ⟨η̃(t)η̃†(t′)⟩:
/// triangular kernel of width T and peak 2κ′/T; integrates to 2κ′ exactly.
double averaged_noise_correlation(double t, double t_prime, double T, double kappa_prime);

}  // namespace casq
