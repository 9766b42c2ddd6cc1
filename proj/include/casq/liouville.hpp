#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "casq/core.hpp"

namespace casq {

enum class Provenance { numeric_full, analytic_opa, analytic_motion, langevin_oracle };

std::string to_string(Provenance p);

struct SpectrumPoint {
    double omega;
    double s;
};

/// Ordered (omega, S(omega)) samples of one squeezing spectrum.
struct SpectrumSeries {
    double phase = 0.0;
    Provenance provenance = Provenance::numeric_full;
    std::vector<SpectrumPoint> points;
    // Largest |Im| discarded when taking the real part of S; the spectrum of
    // a Hermitian quadrature must be real, so this is a numerical residue.
    double max_imag_residue = 0.0;

    // omega strictly increasing, s real and finite.
    void validate() const;
    std::vector<double> omegas() const;
    std::vector<double> values() const;
    double at_omega(double omega, double tol = 1e-9) const;
};

struct SteadyStateOptions {
    double residual_tol = 1e-10;  // relative to the induced inf-norm of L
    bool check_uniqueness = true;
    // Smallest-singular-value floor for the deflated Liouvillian, relative to
    // max|L_ij|; below it the null space is considered degenerate.
    double degeneracy_floor = 1e-13;
};

namespace detail {
class DeflatedLu;  // LU factors of L deflated at the steady mode (omega = 0)
}

struct SteadyState {
    DensityMatrix rho;
    double residual;          // ||L vec(rho)||_inf / ||L||_inf
    double deflated_min_sv;   // 0 when uniqueness check disabled
    std::shared_ptr<const detail::DeflatedLu> deflated;  // reused by spectra at omega=0
};

/// Solves L vec(rho) = 0 with the trace condition replacing one row.
/// Throws DegenerateSteadyState when the null space dimension exceeds 1,
/// Unstable when no normalizable solution exists.
SteadyState steady_state(const SuperOperator& L, const SteadyStateOptions& opts = {});

/// Tr(A rho).
Complex expectation(const DensityMatrix& rho, const Operator& A);

/// ⟨X_phi²⟩ - ⟨X_phi⟩² for the cavity quadrature at the given phase.
double quadrature_variance(const DensityMatrix& rho, const OperatorSet& ops, double phase);

/// Population of the n_max photon sector (truncation-adequacy diagnostic).
double top_sector_population(const DensityMatrix& rho);

struct SpectrumOptions {
    int threads = 0;            // 0: min(hardware_concurrency, 4)
    // Grids at most this long use one LU per frequency; longer grids use a
    // single Hessenberg reduction plus O(d^4 -> D^2) solves per point.
    int lu_grid_threshold = 4;
};

/// Output-field squeezing spectrum from the resolvent of the full Liouvillian:
///   S(omega) = 1 - 4 kappa Re Tr{ dX (L - i omega)^-1 vec(da rho e^{-i phi} + rho da† e^{i phi}) }
/// with da = a - <a>_St and dX the mean-subtracted quadrature. The coherent
/// delta(omega) term is removed exactly by the mean subtraction, and the
/// steady mode is deflated so every solve is well posed, including omega = 0.
/// S -> 1 (vacuum level) as |omega| -> infinity; S < 1 means squeezing.
SpectrumSeries output_squeezing_spectrum(const SuperOperator& L, const SteadyState& ss,
                                         const OperatorSet& ops, double kappa, double phase,
                                         std::span<const double> omega_grid,
                                         const SpectrumOptions& opts = {});

}  // namespace casq
