#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "casq/liouville.hpp"
#include "casq/system.hpp"

namespace casq {

enum class Regime { linear, kerr, opa, mixed };

std::string to_string(Regime r);

/// Coefficients of the effective ground-manifold cavity Hamiltonian
///   (θ̄ - δ_c) a†a + β̄ (a† + a) + χ̄ a†a†aa + (ᾱ/2)(a†² + a²)
/// together with the spontaneous-emission-induced cavity damping γ′.
struct EffectiveCoefficients {
    double theta_bar;    // a.c.-Stark shift of the cavity field
    double beta_bar;     // linear drive
    double chi_bar;      // Kerr strength
    double alpha_bar;    // parametric strength
    double gamma_prime;  // cavity damping via spontaneous emission
    double kappa_prime;  // kappa + gamma_prime
    Regime regime;
};

inline constexpr double kRegimeDominanceRatio = 10.0;

/// θ̄ = (g₊²+g₋²)/Δ, β̄ = √2 Ω g₊/Δ, χ̄ = (g₊²-g₋²)²/Δ³, ᾱ = 2Ω²(g₊²-g₋²)/Δ³.
/// Rejects Δ = 0. gamma_prime_prefactor scales the γ′ formula (see gamma_prime).
EffectiveCoefficients effective_coefficients(const SystemParams& p,
                                             double gamma_prime_prefactor = 1.0);

/// prefactor * γ g²/Δ². The formula as printed has prefactor 1; the Fig-3
/// caption value corresponds to 1/2, so the prefactor is configurable.
double gamma_prime(const SystemParams& p, double prefactor = 1.0);

/// Stationary photon number α²/(2(κ′² - α²)). Throws Unstable when α >= κ′.
double opa_photon_number(double alpha, double kappa_prime);

/// Squeezed-quadrature variance κ′/(κ′+α), in (1/2, 1]. Throws Unstable when α >= κ′.
double opa_quadrature_variance(double alpha, double kappa_prime);

/// S(omega) = 1 - 4 κ α / ((κ′+α)² + ω²).
SpectrumSeries analytic_spectrum(double alpha, double kappa, double kappa_prime,
                                 std::span<const double> omega_grid);

/// Motion-corrected spectrum at first order in k²q̄²:
/// S = 1 - (4κα/D)[1 + ((α²-κ′²-ω²)/D)(k²q̄²/2)], D = (κ′+α)² + ω².
SpectrumSeries motion_spectrum(double alpha, double kappa, double kappa_prime, double k_qbar,
                               std::span<const double> omega_grid);

// Secular-averaged coefficients for vibrating atoms.
double alpha_tilde(double alpha, double k_qbar);  // α (1 - k²q̄²/2)
double theta_tilde(double theta, double k_qbar);  // θ (1 - k²q̄²/2)

/// Harmonic vibration of the trapped atoms about the pattern sites.
struct MotionParams {
    double nu;          // trap frequency
    double k_qbar;      // dimensionless oscillation amplitude k*q̄, in [0, 1)
    double phi1 = 0.0;  // oscillation phases
    double phi2 = std::numbers::pi / 7;

    void validate() const;  // nu > 0, 0 <= k_qbar < 1
};

enum class Verdict { pass, marginal, fail };

std::string to_string(Verdict v);

struct ValidityCheck {
    std::string name;
    std::string statement;  // the inequality, human-readable
    double lhs;             // the side that should dominate
    double rhs;
    double ratio;           // lhs/rhs margin (inf when rhs == 0)
    Verdict verdict;
};

struct ValidityReport {
    std::vector<ValidityCheck> checks;
    std::string note;  // factor-2 ambiguity of gamma', surfaced verbatim

    bool all_pass() const;
    const ValidityCheck& check(const std::string& name) const;
};

inline constexpr double kValidityPassRatio = 10.0;
inline constexpr double kValidityMarginalRatio = 3.0;

/// Evaluates the perturbative premises (g²/|Δ| > κ, γ and γ ≲ Ω²/|Δ|) and,
/// when motion parameters are given, the secular conditions
/// ν ≫ g²/|Δ|, ν ≫ (k²q̄²/8)|g²Δ/Ω²|, ν ≫ (k²q̄²/16)|gΔ/Ω|.
/// Each inequality is flagged pass/marginal/fail at margin ratios 10/3.
ValidityReport validity_report(const SystemParams& p,
                               const std::optional<MotionParams>& m = std::nullopt);

}  // namespace casq
