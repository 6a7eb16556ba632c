// scenario.hpp: scenario files, figure presets and the experiment runner
//
// A scenario is a YAML document. Exactly one of `model` (SI units, rad/s and m)
// or `dimensionless` (Δ = ħ = 1) describes the emitter array, or `preset` borrows
// the geometry of a figure preset. Sweep and case values use the units of that
// block. Results are collected in memory and written only after every stage
// has succeeded, so a failing run leaves no partial output.

#pragma once

#include "routersim/dynamics.hpp"
#include "routersim/observables.hpp"
#include "routersim/oracle.hpp"
#include "routersim/params.hpp"

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace routersim::scenario {

enum ExitCode : int {
    kOk = 0,
    kUsage = 2,
    kMissingFile = 3,
    kSchema = 4,
    kNumerical = 5,
    kVerificationFailed = 6,
    kOutput = 7,
};

// Carries the dotted scenario key responsible for the failure, e.g. "numerics.dt".
class ScenarioError : public std::runtime_error {
public:
    ScenarioError(ExitCode code, std::string key, const std::string& message)
        : std::runtime_error(key + ": " + message), code_(code), key_(std::move(key)), message_(message) {}

    ExitCode code() const noexcept { return code_; }
    const std::string& key() const noexcept { return key_; }
    const std::string& message() const noexcept { return message_; }

private:
    ExitCode code_;
    std::string key_;
    std::string message_;
};

enum class Kind { spectrum_scan, dynamics, envelope, verify, figure };

std::string_view to_string(Kind k);

enum class SweepVariable { transition, spacing };

struct Sweep {
    SweepVariable variable = SweepVariable::transition;
    double start = 0.0;
    double stop = 0.0;
    std::size_t points = 0;

    std::vector<double> values() const;
};

struct Numerics {
    double dt = 0.01;
    double horizon = 200.0;
    double quadrature_tolerance = 1e-11;
    std::size_t oracle_modes = kDefaultOracleModes;
    double omega_max = kDefaultCutoffMultiple;  // multiples of ν
    bool extrapolate = true;
    std::optional<double> window_start;  // long-time window start; default 0.75·horizon
    double verify_horizon = 50.0;        // oracle comparison window [0, verify_horizon]

    double long_time_start() const { return window_start.value_or(0.75 * horizon); }
};

struct Pair {
    std::size_t first = 0;  // 0-based
    std::size_t second = 1;
};

struct Observables {
    std::vector<Pair> concurrence;
    std::vector<std::size_t> fidelity;  // 0-based targets
    std::vector<ConcurrenceConvention> conventions{ConcurrenceConvention::product};
};

// The emitter array in the units of the scenario file.
struct ModelBlock {
    bool si = true;
    ModelParams params;
    DimensionlessModel dimensionless;

    DimensionlessModel reduced() const;
    // Scenario-unit value → dimensionless w₀ or nearest-neighbour delay.
    double reduce_transition(double value) const;
    double reduce_spacing(double value) const;
    double transition() const;  // scenario units
};

struct Scenario {
    Kind kind = Kind::dynamics;
    std::string figure;  // preset id for Kind::figure
    ModelBlock model;
    std::optional<Sweep> sweep;
    Numerics numerics;
    std::vector<double> transitions;  // dynamics cases; empty → the model's own
    std::vector<Method> methods{Method::nonmarkovian};
    Observables observables;
    std::vector<double> numeric_points;  // envelope sweep values checked against Volterra
    std::filesystem::path output = "out";

    // Sub-runs of a figure preset, sharing one output directory.
    std::vector<Scenario> stages;
};

// Throws ScenarioError (kMissingFile or kSchema).
Scenario load_file(const std::filesystem::path& path);
Scenario parse(const std::string& yaml_text);

inline constexpr const char* kPresetIds[] = {"fig2", "fig3", "fig4", "fig5", "fig6"};

// Fully specified figure scenario; throws kUsage for an unknown id.
Scenario preset(const std::string& id);
ModelBlock preset_model(const std::string& id);

// File name → contents.
using Artifacts = std::map<std::string, std::string>;

struct RunResult {
    Artifacts files;
    std::vector<std::string> warnings;
    bool verification_passed = true;
};

// Executes every stage in memory; throws ScenarioError on failure.
RunResult execute(const Scenario& scenario);

// Writes each file through a temporary name and renames it into place.
void commit(const Artifacts& files, const std::filesystem::path& directory);

// execute + commit; returns the process exit code and reports to stderr.
int run_and_write(const Scenario& scenario);

// gnuplot script for a figure preset.
std::string plot_script(const Scenario& figure, const Artifacts& files);

}  // namespace routersim::scenario
