#pragma once

#include <vector>

#include "glv/spectral.hpp"
#include "glv/vortex.hpp"

namespace glv {

/// Boundary condition of the flow. Dirichlet data are
/// g(x) = e^{iα} Πₖ ((x − bₖ)/|x − bₖ|)^{dₖ}, whose winding along ∂D is Σ dₖ
/// for interior bₖ.
struct BoundaryCondition {
    BoundaryKind kind = BoundaryKind::Neumann;
    VortexConfiguration g_sources;
    double g_phase = 0.0;

    static BoundaryCondition neumann() { return {}; }
    static BoundaryCondition dirichlet(VortexConfiguration sources, double phase = 0.0) {
        return {BoundaryKind::Dirichlet, std::move(sources), phase};
    }

    [[nodiscard]] cplx g(Vec2 x) const;
    /// Winding of g along the boundary nodes, counter-clockwise.
    [[nodiscard]] int winding(const Grid& grid) const;
    /// Overwrites the boundary nodes of u with g (no-op for Neumann).
    void apply(ComplexField& u) const;
};

/// Counter-clockwise list of boundary node indices (each node once).
std::vector<std::pair<int, int>> boundary_loop(const Grid& grid);

/// Winding number of the phase of u along the boundary loop.
int boundary_winding(const ComplexField& u);

}  // namespace glv
