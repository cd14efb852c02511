#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "glv/boundary.hpp"
#include "glv/external_fields.hpp"
#include "glv/ode_law.hpp"
#include "glv/simulate.hpp"

namespace glv::harness {

enum class ExperimentKind { Simulate, Ode, Compare, Sweep, Diagnose };
std::string to_string(ExperimentKind k);
ExperimentKind parse_kind(const std::string& name);

struct RunConfig {
    ExperimentKind kind = ExperimentKind::Simulate;
    Vec2 origin{0.0, 0.0};
    Vec2 extent{1.0, 1.0};
    /// Grid size; when h_over_eps > 0 the grid is derived from ε instead.
    int n1 = 0;
    int n2 = 0;
    double h_over_eps = 0.0;
    double eps = 0.05;
    double lambda0 = 1.0;
    double T = 0.0;
    /// 0 selects the default step.
    double dt = 0.0;
    double frame_interval = 0.01;
    BoundaryCondition bc;
    FieldSpec F, G;
    VortexConfiguration initial;
    DetectionOptions detection;
    double v_max = 10.0;
    int max_tracking_failures = 3;
    double excess_threshold = 0.5;
    double energy_guard = 1e-6;
    bool residuals = true;
    bool diagnostics = true;
    int snapshot_every = 0;
    std::filesystem::path output_dir;
    /// ODE options.
    double rtol = 1e-8;
    double atol = 1e-10;
    TimeOperator time_operator = TimeOperator::DegreeWeighted;
    /// Grid size for the W solves of the ODE; 0 reuses the PDE grid.
    int ode_grid = 0;
    /// Comparison options.
    bool median_filter = false;
    /// Sweep options.
    std::vector<double> sweep_epsilons;
    ExperimentKind sweep_member = ExperimentKind::Compare;
    /// The text the configuration was parsed from.
    std::string source;

    [[nodiscard]] Grid grid() const;
    /// The same configuration at another ε, grid re-derived when h_over_eps is set.
    [[nodiscard]] RunConfig with_eps(double eps) const;
};

/// Parses YAML text. Throws ConfigError naming the offending key, including
/// unknown keys.
RunConfig parse_config(const std::string& text);
/// Reads a YAML file, or the embedded configuration of a manifest.json.
RunConfig load_config(const std::filesystem::path& path);
/// Re-emits a configuration as YAML; parse_config(to_yaml(c)) reproduces c.
std::string to_yaml(const RunConfig& config);

/// Throws ConfigError unless the fields, boundary data and initial
/// configuration are admissible for the grid.
void validate(const RunConfig& config);

SimulationSetup make_setup(const RunConfig& config);
OdeParams make_ode_params(const RunConfig& config);

/// FNV-1a 64-bit hash of the text, as 16 hex digits.
std::string config_hash(const std::string& text);

}  // namespace glv::harness
