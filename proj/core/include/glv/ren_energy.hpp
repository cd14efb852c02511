#pragma once

#include <vector>

#include "glv/boundary.hpp"
#include "glv/fields.hpp"
#include "glv/spectral.hpp"
#include "glv/test_functions.hpp"
#include "glv/vortex.hpp"

namespace glv {

/// ψ = Σ dₖ log|x − aₖ| + ψ_reg with j(u*) = ∇⊥ψ = (−∂₂ψ, ∂₁ψ).
/// Neumann case: ψ = 0 on ∂D. Dirichlet case: ∂_νψ equals the tangential
/// derivative of the phase of g.
struct StreamFunction {
    VortexConfiguration config;
    BoundaryKind kind = BoundaryKind::Neumann;
    ScalarField psi_reg;
    /// ½∮ψ ∂_νψ ds over ∂D (zero in the Neumann case).
    double boundary_term = 0.0;

    [[nodiscard]] double singular(Vec2 x) const;
    [[nodiscard]] Vec2 singular_gradient(Vec2 x) const;
    [[nodiscard]] double regular(Vec2 x) const;
    [[nodiscard]] Vec2 regular_gradient(Vec2 x) const;
    [[nodiscard]] double psi(Vec2 x) const { return singular(x) + regular(x); }
    /// j(u*)(x) = ∇⊥ψ.
    [[nodiscard]] Vec2 current(Vec2 x) const;
};

struct RenEnergyValue {
    double W = 0.0;
    /// −π Σ_{j≠k} dⱼdₖ log|aⱼ − aₖ|
    double pair_term = 0.0;
    /// −π Σ dₖ ψ_reg(aₖ)
    double regular_term = 0.0;
    /// ½∮ψ ∂_νψ ds (Dirichlet case)
    double boundary_term = 0.0;
};

struct GradWOptions {
    /// Finite-difference step for the regular part; 0 selects
    /// clamp(ρ_∂/10, 4.5h, ρ_∂/8) with ρ_∂ the distance to the boundary.
    double delta = 0.0;
};

/// Renormalized energy W = lim_{s→0} ½∫_{D∖∪B_s}|∇u*|² − πN log(1/s) on a
/// fixed grid and boundary condition. Holds solver buffers, so one instance
/// must not be shared between threads.
class RenormalizedEnergy {
public:
    RenormalizedEnergy(const Grid& grid, BoundaryCondition bc);

    [[nodiscard]] const Grid& grid() const { return grid_; }
    [[nodiscard]] const BoundaryCondition& bc() const { return bc_; }

    /// Throws ConfigTooClose if ρ ≤ 4h, SolverFailure on a non-finite solve.
    StreamFunction stream_function(const VortexConfiguration& config);
    RenEnergyValue energy(const VortexConfiguration& config);
    /// ∂_{aₖ}W: the pairwise term differentiated in closed form plus
    /// fourth-order central differences of the regular and boundary terms.
    std::vector<Vec2> gradient(const VortexConfiguration& config, GradWOptions options = {});

private:
    StreamFunction solve(const VortexConfiguration& config);
    void check_config(const VortexConfiguration& config) const;

    Grid grid_;
    BoundaryCondition bc_;
    SpectralSolver dirichlet_solver_;
    std::unique_ptr<SpectralSolver> neumann_solver_;
    std::vector<double> rhs_, sol_;
    std::vector<double> tangential_phase_;  // per boundary side node, Dirichlet only
};

/// Pairwise part −2π dₖ Σ_{l≠k} d_l (aₖ − a_l)/|aₖ − a_l|², the far-field
/// approximation of ∂_{aₖ}W.
std::vector<Vec2> grad_W_pairwise(const VortexConfiguration& config);
double pair_energy(const VortexConfiguration& config);

StreamFunction stream_function(const VortexConfiguration& config, const BoundaryCondition& bc,
                               const Grid& grid);
RenEnergyValue renormalized_energy(const VortexConfiguration& config, const BoundaryCondition& bc,
                                   const Grid& grid);
std::vector<Vec2> grad_W(const VortexConfiguration& config, const BoundaryCondition& bc,
                         const Grid& grid, GradWOptions options = {});

struct StressIdentityResult {
    double lhs = 0.0;
    double rhs = 0.0;
};

/// lhs = ∫(grad curl φ):(j(u*) ⊗ j(u*)) dx on the grid, rhs = −curl φ(aₖ)·∂_{aₖ}W.
/// φ must be affine in B_s(aₖ) and vanish near the other vortices and the
/// boundary; violations raise TestFunctionInvalid.
StressIdentityResult stress_identity_check(const VortexConfiguration& config, const BoundaryCondition& bc,
                          const Grid& grid, std::size_t k, const ScalarTest& phi, double s);

}  // namespace glv
