#include "glv/initial_data.hpp"

#include <cmath>

#include "glv/errors.hpp"
#include "glv/operators.hpp"
#include "glv/spectral.hpp"

namespace glv {

ScalarField phase_correction(const StreamFunction& sf) {
    const Grid& g = sf.psi_reg.grid;
    const int n1 = g.n1(), n2 = g.n2();
    const double h = g.h();
    const auto grad = gradient(sf.psi_reg);
    // ∇⊥ψ_reg at nodes
    auto jreg = [&](int i, int j) { return rot90(grad(i, j)); };

    // Normal equations of min Σ_e w_e (φ_b − φ_a − c_e)², boundary-parallel
    // edges weighted ½; this is the reflected five-point Laplacian.
    std::vector<double> rhs(g.size(), 0.0), phi(g.size(), 0.0);
    auto add_edge = [&](int ia, int ja, int ib, int jb, double c) {
        const bool along_boundary = (ja == jb && (ja == 0 || ja == n2 - 1)) || (ia == ib && (ia == 0 || ia == n1 - 1));
        const double w = along_boundary ? 0.5 : 1.0;
        rhs[g.index(ia, ja)] -= w * c;
        rhs[g.index(ib, jb)] += w * c;
    };
    for (int j = 0; j < n2; ++j) {
        for (int i = 0; i < n1; ++i) {
            if (i + 1 < n1) add_edge(i, j, i + 1, j, 0.5 * h * (jreg(i, j).x + jreg(i + 1, j).x));
            if (j + 1 < n2) add_edge(i, j, i, j + 1, 0.5 * h * (jreg(i, j).y + jreg(i, j + 1).y));
        }
    }
    for (int j = 0; j < n2; ++j) {
        for (int i = 0; i < n1; ++i) {
            const double wx = (i == 0 || i == n1 - 1) ? 0.5 : 1.0;
            const double wy = (j == 0 || j == n2 - 1) ? 0.5 : 1.0;
            // Σ_e w_e(φ_i − φ_j) = h² ωᵢ (−Δₕφ)ᵢ must equal −Σ_e w_e c_{i→j}.
            rhs[g.index(i, j)] /= h * h * wx * wy;
        }
    }
    SpectralSolver solver(g, BoundaryKind::Neumann);
    solver.solve(phi, rhs, 0.0);
    ScalarField out(g, Centering::Node);
    out.values = std::move(phi);
    return out;
}

ComplexField well_prepared(const VortexConfiguration& config, const EpsilonScaling& scaling,
                           const Grid& grid, const BoundaryCondition& bc, const RadialProfile& profile) {
    config.validate(grid);
    const double rho = config.rho(grid);
    if (!(rho > 8.0 * scaling.eps) || !(rho > 8.0 * grid.h()))
        throw ConfigTooTight("initial configuration too tight: rho = " + std::to_string(rho) +
                             " must exceed 8*epsilon and 8h");
    ComplexField u(grid);
    if (config.empty()) {
        std::fill(u.values.begin(), u.values.end(), cplx(1.0, 0.0));
        bc.apply(u);
        return u;
    }
    const StreamFunction sf = stream_function(config, bc, grid);
    const ScalarField phase = phase_correction(sf);
    for (int j = 0; j < grid.n2(); ++j) {
        for (int i = 0; i < grid.n1(); ++i) {
            const Vec2 x = grid.node(i, j);
            cplx v = std::polar(1.0, phase(i, j));
            for (std::size_t k = 0; k < config.size(); ++k) {
                const Vec2 d = x - config.positions[k];
                const double r = norm(d);
                if (r == 0.0) {
                    v = 0.0;
                    continue;
                }
                const cplx z = cplx(d.x, d.y) / r;
                v *= (config.degrees[k] > 0 ? z : std::conj(z)) * profile(r / scaling.eps);
            }
            u(i, j) = v;
        }
    }
    if (bc.kind == BoundaryKind::Dirichlet) {
        // Align the free constant phase of u* with g, then pin the trace.
        cplx mean{};
        for (const auto& [i, j] : boundary_loop(grid)) {
            const cplx ub = u(i, j);
            if (std::abs(ub) > 0.0) mean += bc.g(grid.node(i, j)) * std::conj(ub) / std::abs(ub);
        }
        const cplx rot = mean / std::abs(mean);
        for (auto& v : u.values) v *= rot;
        bc.apply(u);
    }
    return u;
}

}  // namespace glv
