#pragma once

#include <memory>
#include <string>
#include <vector>

#include "glv/boundary.hpp"
#include "glv/external_fields.hpp"
#include "glv/fields.hpp"
#include "glv/ren_energy.hpp"
#include "glv/vortex.hpp"

namespace glv {

enum class OdeStatus { Running, Collision, BoundaryExit };
std::string to_string(OdeStatus s);

/// Left-hand operator of the vortex law. DegreeWeighted: (λ₀ + dₖi)ȧₖ;
/// Uniform: (λ₀ + i)ȧₖ for every degree.
enum class TimeOperator { DegreeWeighted, Uniform };
std::string to_string(TimeOperator op);
TimeOperator parse_time_operator(const std::string& s);

/// Collision radius 4·max(ε, 2h) shared by the PDE and the ODE.
inline double collision_radius(double eps, double h) { return 4.0 * std::max(eps, 2.0 * h); }

struct OdeParams {
    double lambda0 = 1.0;
    ExternalFields fields;
    BoundaryCondition bc;
    /// Grid on which W and its gradient are evaluated.
    Grid grid;
    TimeOperator time_operator = TimeOperator::DegreeWeighted;
    double rtol = 1e-8;
    double atol = 1e-10;
    /// Events: Collision when the minimum separation reaches this radius,
    /// BoundaryExit when a vortex comes this close to ∂D.
    double collision_radius = 0.0;
    /// ∂W is reused until some vortex moves further than this; 0 recomputes
    /// it at every evaluation.
    double delta_cache = 0.0;
    double initial_step = 1e-4;
    double max_step = 0.05;
    /// Relative step floor; below it the integration raises StepUnderflow.
    double min_step = 1e-12;
    GradWOptions grad_options{};
};

/// Per-vortex right side split into its three sources, and the velocity.
struct OdeRhs {
    std::vector<Vec2> w_term;  ///< −(1/π)∂_{aₖ}W
    std::vector<Vec2> f_term;  ///< F(aₖ, t)
    std::vector<Vec2> g_term;  ///< dₖ iG(aₖ, t)
    std::vector<Vec2> velocity;

    [[nodiscard]] Vec2 total(std::size_t k) const { return w_term[k] + f_term[k] + g_term[k]; }
};

/// Solves (λ₀ + σi)v = r with σ = ±1 and i acting as rotation by π/2.
Vec2 solve_mobility(double lambda0, int sigma, Vec2 r);
/// (λ₀ + σi)v, the left side of the law.
Vec2 apply_mobility(double lambda0, int sigma, Vec2 v);
/// σ used for a vortex of degree d under the operator.
inline int mobility_sign(TimeOperator op, int degree) { return op == TimeOperator::DegreeWeighted ? degree : 1; }

/// Evaluates the vortex law with a caller-provided W evaluator.
OdeRhs ode_rhs(const VortexConfiguration& config, const OdeParams& params, RenormalizedEnergy& energy);
OdeRhs ode_rhs(const VortexConfiguration& config, const OdeParams& params);

struct OdeSample {
    double t = 0.0;
    std::vector<Vec2> positions;
    OdeRhs rhs;
};

struct OdeTrajectory {
    std::vector<int> degrees;
    /// Requested horizon T.
    double horizon = 0.0;
    std::vector<OdeSample> samples;
    OdeStatus status = OdeStatus::Running;
    /// Event time when status ≠ Running.
    double t_star = 0.0;
    long accepted_steps = 0;
    long rejected_steps = 0;
    long rhs_evaluations = 0;

    [[nodiscard]] double final_time() const { return samples.empty() ? 0.0 : samples.back().t; }
    /// Cubic Hermite interpolation between samples; clamps to the ends.
    [[nodiscard]] std::vector<Vec2> positions_at(double t) const;
    [[nodiscard]] std::vector<Vec2> velocities_at(double t) const;
};

/// Dormand-Prince 5(4) integration of the vortex law up to time T or the
/// first event, located by bisection on the Hermite interpolant of the
/// step. Throws StepUnderflow with the last valid state in the message.
OdeTrajectory integrate(const VortexConfiguration& initial, const OdeParams& params, double T);

}  // namespace glv
