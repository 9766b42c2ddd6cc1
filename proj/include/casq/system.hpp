#pragma once

#include <numbers>

#include "casq/core.hpp"

namespace casq {

/// Physical rates and geometry. All rates are in units of a reference rate
/// kappa0; H is represented divided by hbar, so no physical constants appear.
struct SystemParams {
    double delta = 0.0;    // laser-dipole detuning, omega_L - omega_0
    double delta_c = 0.0;  // laser-cavity detuning, omega_L - omega_c
    double g = 0.0;        // vacuum coupling amplitude
    double omega = 0.0;    // laser Rabi frequency
    double gamma = 0.0;    // atomic spontaneous linewidth
    double kappa = 1.0;    // cavity decay
    double kx1 = 0.0;      // atomic phase k*x_1
    double kx2 = std::numbers::pi;  // atomic phase k*x_2
    int n_max = 15;        // photon cutoff

    // Throws ConfigError on non-finite rates, negative kappa/gamma/g/omega,
    // or n_max < 1.
    void validate() const;

    HilbertSpace space() const { return HilbertSpace(n_max); }
};

enum class PatternLabel { lambda, half_lambda, custom };

struct PatternGeometry {
    PatternLabel label = PatternLabel::custom;
    double kx1 = 0.0;
    double kx2 = 0.0;

    /// lambda: cos(kx1) = cos(kx2) = ±1 with equal sign;
    /// half_lambda: cos(kx1) = -cos(kx2) = ±1.
    static PatternGeometry classify(double kx1, double kx2, double tol = 1e-12);
    static PatternGeometry lambda();       // kx = (0, 2*pi)
    static PatternGeometry half_lambda();  // kx = (0, pi)
};

struct CouplingConstants {
    double g_plus;
    double g_minus;
};

/// g±(x1, x2) = (g/√2)(cos kx1 ± cos kx2)
CouplingConstants coupling_constants(double kx1, double kx2, double g);

/// H/hbar = -Δ Σ σ†σ - δ_c a†a + Ω Σ (σ† + σ) + Σ g cos(kx_j)(a†σ_j + σ_j†a).
/// Atoms are pinned: no mechanical term.
Operator build_hamiltonian(const SystemParams& p, const OperatorSet& ops);

/// Full Liouvillian of the master equation: L rho = -i[H, rho]
///   + kappa (2 a rho a† - a†a rho - rho a†a)
///   + Σ_j (gamma/2)(2 sigma_j rho sigma_j† - sigma_j†sigma_j rho - rho sigma_j†sigma_j).
/// The spontaneous-emission recoil kernel is replaced by the bare state
/// (atoms pinned), so the gamma term is a plain Lindblad dissipator.
SuperOperator build_liouvillian(const SystemParams& p, const OperatorSet& ops);

}  // namespace casq
