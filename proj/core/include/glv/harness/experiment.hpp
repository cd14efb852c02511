#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "glv/compare.hpp"
#include "glv/diagnose.hpp"
#include "glv/harness/config.hpp"
#include "glv/harness/outputs.hpp"

namespace glv::harness {

struct RunOptions {
    int workers = 1;
    bool quiet = false;
};

struct ExperimentResult {
    ExperimentKind kind = ExperimentKind::Simulate;
    std::filesystem::path dir;
    std::optional<TrajectoryRecord> pde;
    std::optional<OdeTrajectory> ode;
    std::optional<ComparisonReport> comparison;
    std::optional<DiagnosticsBundle> diagnostics;
    std::vector<SweepRow> sweep;
};

/// Runs the configured experiment and writes its outputs under `out`
/// (created if needed): CSV tables, summary.json, plot.csv and
/// manifest.json, plus snapshots when requested. Sweep members get their
/// own subdirectories and run on up to `workers` threads.
ExperimentResult run_experiment(const RunConfig& config, const std::filesystem::path& out,
                                const RunOptions& options = {});

}  // namespace glv::harness
