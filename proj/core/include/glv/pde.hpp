#pragma once

#include <functional>
#include <optional>

#include "glv/boundary.hpp"
#include "glv/external_fields.hpp"
#include "glv/fields.hpp"
#include "glv/spectral.hpp"

namespace glv {

struct PdeState {
    ComplexField u;
    long step = 0;
    /// (uⁿ − uⁿ⁻¹)/Δt from the last step; empty before the first step.
    std::optional<ComplexField> u_t;

    [[nodiscard]] double time() const { return u.time; }
};

/// Extra right-hand side S(x, t) added to the flow, used for manufactured
/// solutions: (λ+i)∂ₜu + k(F·∇)u + (G·∇)(iu) = Δu + (1−|u|²)u/ε² + S.
using SourceTerm = std::function<void(double t, const Grid& grid, std::vector<cplx>& out)>;

struct StepperOptions {
    /// Relative energy increase per step that raises StabilityViolation when
    /// F = G = 0 and no source is present; ≤ 0 disables the guard.
    double energy_guard = 1e-6;
};

/// Default Δt = min(ε²/4, λ_ε ε²/2). The second bound keeps the explicit
/// reaction term stable for small λ_ε.
double default_time_step(const EpsilonScaling& scaling);

/// First-order IMEX step of the forced mixed flow: implicit five-point
/// Laplacian, explicit reaction and convection with centered differences.
class Stepper {
public:
    Stepper(const Grid& grid, double dt, EpsilonScaling scaling, BoundaryCondition bc,
            ExternalFields fields, StepperOptions options = {}, SourceTerm source = {});

    /// Advances one step. Throws NonFinite or StabilityViolation.
    PdeState step(const PdeState& state);
    /// Advances in place.
    void advance(PdeState& state);

    [[nodiscard]] double dt() const { return dt_; }
    [[nodiscard]] const EpsilonScaling& scaling() const { return scaling_; }
    [[nodiscard]] const BoundaryCondition& bc() const { return bc_; }
    [[nodiscard]] const ExternalFields& fields() const { return fields_; }
    /// Energy after the last step (computed only when the guard is active).
    [[nodiscard]] std::optional<double> last_energy() const { return last_energy_; }
    /// Largest discrepancy between the ghost value implied by the discrete
    /// equation at a Neumann boundary node and its reflection, divided by 2h.
    [[nodiscard]] double last_neumann_flux() const { return last_flux_; }

private:
    void build_rhs(const ComplexField& u, std::vector<cplx>& rhs);
    double neumann_flux(const std::vector<cplx>& u_new, const std::vector<cplx>& rhs) const;

    Grid grid_;
    double dt_;
    EpsilonScaling scaling_;
    BoundaryCondition bc_;
    ExternalFields fields_;
    StepperOptions options_;
    SourceTerm source_;
    SpectralSolver solver_;
    VectorField f_profile_, g_profile_;
    std::vector<cplx> rhs_, extra_;
    std::optional<double> last_energy_;
    double last_flux_ = 0.0;
};

/// Single step with a freshly built stepper.
PdeState step(const PdeState& state, double dt, const EpsilonScaling& scaling,
              const BoundaryCondition& bc, const ExternalFields& fields);

}  // namespace glv
