#pragma once

#include <string>
#include <vector>

#include "glv/simulate.hpp"

namespace glv {

struct DiagnosticRow {
    double t = 0.0;
    int vortices = 0;
    double energy = 0.0;
    /// E_ε/log(1/ε) and E_ε − πN log(1/ε).
    double energy_ratio = 0.0;
    double energy_offset = 0.0;
    double kinetic = 0.0;
    double excess = 0.0;
    std::vector<double> div_j;
    double far_energy = 0.0;
    std::vector<double> stress_defect;
    std::vector<double> equipartition;
    /// Totals of the energy, Jacobian and mass law residuals; NaN when absent.
    double residual_energy = 0.0;
    double residual_jacobian = 0.0;
    double residual_mass = 0.0;
};

struct DiagnosticsBundle {
    double eps = 0.0;
    std::vector<std::string> div_j_names;
    std::vector<std::string> stress_names;
    std::vector<DiagnosticRow> rows;
    double max_energy_ratio = 0.0;
    /// max − min of E_ε − πN log(1/ε) over the run.
    double energy_offset_variation = 0.0;
    double kinetic_total = 0.0;
    /// ∫₀ᵀ|∫φ div j| dt and sup_t |∫φ div j| per test function.
    std::vector<double> div_j_integrated;
    std::vector<double> div_j_sup;
    double max_far_energy = 0.0;
    double max_equipartition = 0.0;
    double max_residual_energy = 0.0;
    double max_residual_jacobian = 0.0;
    double max_residual_mass = 0.0;
};

/// Summarizes the per-frame diagnostics of a PDE record.
DiagnosticsBundle diagnose(const TrajectoryRecord& record);

}  // namespace glv
