#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "glv/boundary.hpp"
#include "glv/conservation.hpp"
#include "glv/external_fields.hpp"
#include "glv/fields.hpp"
#include "glv/pde.hpp"
#include "glv/vortex.hpp"
#include "glv/vortex_track.hpp"

namespace glv {

/// Everything a PDE run needs, independent of how it was configured.
struct SimulationSetup {
    Grid grid;
    EpsilonScaling scaling;
    BoundaryCondition bc;
    ExternalFields fields;
    VortexConfiguration initial;
    /// Replaces the well-prepared datum when set.
    std::optional<ComplexField> initial_field;
    double T = 0.0;
    /// 0 selects default_time_step.
    double dt = 0.0;
    /// Steps between tracked frames; 0 derives it from frame_interval.
    int frame_stride = 0;
    double frame_interval = 0.01;
    DetectionOptions detection{};
    /// Velocity bound entering the per-frame mobility cap.
    double v_max = 10.0;
    /// Consecutive frames with failed detection tolerated before TrackingLost.
    int max_tracking_failures = 3;
    double excess_threshold = 0.5;
    bool residuals = true;
    bool diagnostics = true;
    StepperOptions stepper{};
    /// Snapshot files are written every `snapshot_every` frames when > 0.
    std::filesystem::path snapshot_dir;
    int snapshot_every = 0;
    /// Called after every frame, e.g. for progress reports.
    std::function<void(double t, double T)> progress;
};

enum class RunStatus { Completed, Collision, BoundaryExit };
std::string to_string(RunStatus s);

/// Pairings recorded per frame for the concentration diagnostics.
struct FrameDiagnostics {
    /// ∫(k_ε p(u), w) for each field of vector_test_bank.
    std::vector<double> momentum;
    /// ∫ φ div j(u) for each function of scalar_test_bank.
    std::vector<double> div_j;
    /// ∫ k_ε e_ε(u) φ with φ vanishing near the tracked vortices.
    double far_energy = 0.0;
    /// |∫ k_ε(∇u⊗∇u) w − π Σ w(ξₖ)| for each field of vector_test_bank.
    std::vector<double> stress_defect;
    /// Equipartition defect in B_{ρ/2}(ξₖ) per vortex.
    std::vector<double> equipartition;
};

struct Frame {
    double t = 0.0;
    long step = 0;
    /// Tracked vortices, in track order.
    VortexConfiguration vortices;
    std::vector<int> cluster_size;
    std::vector<double> min_modulus;
    bool detected = true;
    ExcessReport excess;
    /// Cumulative k_ε∫₀ᵗ∫|∂ₜu|² and λ_ε∫₀ᵗ∫|∂ₜu|².
    double kinetic = 0.0;
    double dissipated = 0.0;
    double jacobian_mass = 0.0;
    int boundary_winding = 0;
    double max_modulus = 0.0;
    double neumann_flux = 0.0;
    std::optional<ResidualReport> residuals;
    std::optional<FrameDiagnostics> diagnostics;
};

struct TrajectoryRecord {
    double eps = 0.0;
    double lambda0 = 0.0;
    double h = 0.0;
    double dt = 0.0;
    double T = 0.0;
    double collision_radius = 0.0;
    double gamma = 0.0;
    BoundaryKind bc_kind = BoundaryKind::Neumann;
    std::vector<int> degrees;
    std::vector<Frame> frames;
    RunStatus status = RunStatus::Completed;
    /// Event time, interpolated between the last two frames.
    double t_star = 0.0;
    long steps = 0;
    /// Largest per-step increase of E_ε observed when F = G = 0.
    double max_energy_increase = 0.0;
    std::string message;

    [[nodiscard]] double final_time() const { return frames.empty() ? 0.0 : frames.back().t; }
};

/// Runs the flow to T or the first collision/boundary exit, tracking the
/// vortices every frame. Throws the step errors, TrackingLost, and the
/// detection errors once they persist.
TrajectoryRecord simulate(const SimulationSetup& setup);

/// Builds the initial field of a setup.
ComplexField initial_field(const SimulationSetup& setup);

}  // namespace glv
