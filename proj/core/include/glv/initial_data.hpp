#pragma once

#include "glv/boundary.hpp"
#include "glv/fields.hpp"
#include "glv/radial_profile.hpp"
#include "glv/ren_energy.hpp"

namespace glv {

/// Phase of the canonical harmonic map on the grid: Σ dₖ arg(x − aₖ) plus a
/// smooth correction whose gradient is ∇⊥ψ_reg, recovered by weighted
/// least-squares integration along grid edges (zero mean).
ScalarField phase_correction(const StreamFunction& sf);

/// u⁰ = u*(x) · Πₖ f(|x − aₖ|/ε), with u* = e^{iθ} the canonical harmonic
/// map of the configuration. Dirichlet boundary nodes are set to g.
/// Throws ConfigTooTight unless ρ > 8ε and ρ > 8h.
ComplexField well_prepared(const VortexConfiguration& config, const EpsilonScaling& scaling,
                           const Grid& grid, const BoundaryCondition& bc,
                           const RadialProfile& profile = default_profile());

}  // namespace glv
