#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "casq/motion.hpp"
#include "casq/opa.hpp"

namespace casq {

struct OmegaGrid {
    double min = -5.0;
    double max = 5.0;
    int points = 201;

    std::vector<double> values() const;
    void validate() const;  // min < max, points >= 2
};

enum class OutputKind { spectrum, steady, coefficients, validity };

/// One reproducible run: parameters, grid, requested outputs. Round-trips
/// byte-identically through serialize/parse (canonical form, %.17g floats,
/// explicit units-of-kappa0 suffixes, unknown keys rejected).
struct ScenarioConfig {
    std::string name;
    SystemParams params;
    std::optional<MotionParams> motion;
    // Caption value of gamma'; when set, analytic curves use it verbatim and
    // the numeric branch realizes the same operating point through
    // gamma_sim = gamma' * delta^2 / g^2 (the effective mapping of the full
    // master equation, independent of the configurable formula prefactor).
    std::optional<double> gamma_prime_override;
    OmegaGrid grid;
    double phase = std::numbers::pi / 4;
    std::vector<OutputKind> outputs = {OutputKind::spectrum};

    void validate() const;
};

std::string serialize(const ScenarioConfig& cfg);
ScenarioConfig parse_scenario(const std::string& text);
ScenarioConfig load_scenario(const std::filesystem::path& file);

/// Built-in configurations: fig3_gamma0, fig3_gammap, fig4_gamma0,
/// fig4_gammap, fig8_motion, lambda_coherent.
ScenarioConfig builtin_scenario(const std::string& name);
std::vector<std::string> builtin_scenario_names();

struct RunOptions {
    std::filesystem::path out_dir = ".";
    std::optional<int> n_max;               // override cfg.params.n_max
    std::optional<OmegaGrid> grid;          // override cfg.grid
    double gamma_prime_prefactor = 1.0;     // for gamma' derived from gamma
    int threads = 0;
    double truncation_tail_bound = 1e-6;    // abort above this top-sector population
};

struct RunResult {
    std::vector<std::filesystem::path> files;
    std::map<std::string, double> stats;    // named scalar results
    double wall_time_s = 0.0;
};

/// Executes the configured outputs and writes CSV files plus a manifest.
/// Every file is written atomically (temp then rename); reruns with the same
/// config produce byte-identical CSV. Library errors are rethrown with the
/// scenario name and failing stage prepended. Throws TruncationInsufficient
/// when the steady state leaves more than the configured population bound in
/// the top photon sector.
RunResult run_scenario(const ScenarioConfig& cfg, const RunOptions& opts = {});

enum class SweepParameter { kappa, gamma, gamma_prime, omega, g, kx2, k_qbar };

SweepParameter sweep_parameter_from_string(const std::string& s);
std::string to_string(SweepParameter p);

struct SweepSpec {
    SweepParameter parameter;
    std::vector<double> values;   // strictly monotone, non-empty
    bool with_numeric = false;    // full-master-equation S(0), n, variance per point
};

/// One row per sweep point: analytic S(0), photon number, variance, regime
/// and stability flag, plus the numeric columns when requested.
RunResult sweep(const SweepSpec& spec, const ScenarioConfig& base, const RunOptions& opts = {});

/// Figure datasets fig3..fig8 (spectra for 3, 4, 8; S(0)/variance trends vs
/// kappa, gamma, kappa' for 5, 6, 7).
RunResult run_figure(const std::string& figure, const RunOptions& opts = {});
std::vector<std::string> figure_names();

}  // namespace casq
