#include "glv/ren_energy.hpp"

#include <cmath>
#include <numbers>

#include "glv/errors.hpp"
#include "glv/interpolation.hpp"
#include "glv/operators.hpp"

namespace glv {

namespace {

constexpr double pi = std::numbers::pi;

struct Side {
    std::vector<std::pair<int, int>> nodes;  // in counter-clockwise order
    Vec2 normal;
};

std::vector<Side> sides_of(const Grid& g) {
    const int n1 = g.n1(), n2 = g.n2();
    std::vector<Side> s(4);
    for (int i = 0; i < n1; ++i) s[0].nodes.emplace_back(i, 0);
    s[0].normal = {0.0, -1.0};
    for (int j = 0; j < n2; ++j) s[1].nodes.emplace_back(n1 - 1, j);
    s[1].normal = {1.0, 0.0};
    for (int i = n1 - 1; i >= 0; --i) s[2].nodes.emplace_back(i, n2 - 1);
    s[2].normal = {0.0, 1.0};
    for (int j = n2 - 1; j >= 0; --j) s[3].nodes.emplace_back(0, j);
    s[3].normal = {-1.0, 0.0};
    return s;
}

}  // namespace

double StreamFunction::singular(Vec2 x) const {
    double v = 0.0;
    for (std::size_t k = 0; k < config.size(); ++k)
        v += config.degrees[k] * std::log(distance(x, config.positions[k]));
    return v;
}

Vec2 StreamFunction::singular_gradient(Vec2 x) const {
    Vec2 g{};
    for (std::size_t k = 0; k < config.size(); ++k) {
        const Vec2 d = x - config.positions[k];
        g += (config.degrees[k] / dot(d, d)) * d;
    }
    return g;
}

double StreamFunction::regular(Vec2 x) const { return interpolate(psi_reg, x); }
Vec2 StreamFunction::regular_gradient(Vec2 x) const { return interpolate_gradient(psi_reg, x); }

Vec2 StreamFunction::current(Vec2 x) const {
    return rot90(singular_gradient(x) + regular_gradient(x));
}

double pair_energy(const VortexConfiguration& config) {
    double w = 0.0;
    for (std::size_t k = 0; k < config.size(); ++k)
        for (std::size_t l = 0; l < config.size(); ++l)
            if (l != k)
                w -= pi * config.degrees[k] * config.degrees[l] *
                     std::log(distance(config.positions[k], config.positions[l]));
    return w;
}

std::vector<Vec2> grad_W_pairwise(const VortexConfiguration& config) {
    std::vector<Vec2> g(config.size());
    for (std::size_t k = 0; k < config.size(); ++k) {
        for (std::size_t l = 0; l < config.size(); ++l) {
            if (l == k) continue;
            const Vec2 d = config.positions[k] - config.positions[l];
            g[k] -= (2.0 * pi * config.degrees[k] * config.degrees[l] / dot(d, d)) * d;
        }
    }
    return g;
}

RenormalizedEnergy::RenormalizedEnergy(const Grid& grid, BoundaryCondition bc)
    : grid_(grid),
      bc_(std::move(bc)),
      dirichlet_solver_(grid, BoundaryKind::Dirichlet),
      rhs_(grid.size()),
      sol_(grid.size()) {
    if (bc_.kind != BoundaryKind::Dirichlet) return;
    neumann_solver_ = std::make_unique<SpectralSolver>(grid, BoundaryKind::Neumann);
    // Tangential derivative of the phase of g along each side, second-order
    // one-sided at the corners.
    const double h = grid.h();
    for (const Side& side : sides_of(grid)) {
        const int m = static_cast<int>(side.nodes.size());
        std::vector<double> theta(m, 0.0);
        for (int s = 1; s < m; ++s) {
            const auto [i0, j0] = side.nodes[s - 1];
            const auto [i1, j1] = side.nodes[s];
            theta[s] = theta[s - 1] + std::arg(bc_.g(grid.node(i1, j1)) * std::conj(bc_.g(grid.node(i0, j0))));
        }
        for (int s = 0; s < m; ++s) {
            double d;
            if (s == 0) {
                d = (-3.0 * theta[0] + 4.0 * theta[1] - theta[2]) / (2.0 * h);
            } else if (s == m - 1) {
                d = (3.0 * theta[m - 1] - 4.0 * theta[m - 2] + theta[m - 3]) / (2.0 * h);
            } else {
                d = (theta[s + 1] - theta[s - 1]) / (2.0 * h);
            }
            tangential_phase_.push_back(d);
        }
    }
}

void RenormalizedEnergy::check_config(const VortexConfiguration& config) const {
    config.validate(grid_);
    const double rho = config.rho(grid_);
    if (!(rho > 4.0 * grid_.h()))
        throw ConfigTooClose("vortex configuration too close: rho = " + std::to_string(rho) +
                             " must exceed 4h = " + std::to_string(4.0 * grid_.h()));
    if (bc_.kind == BoundaryKind::Dirichlet && bc_.winding(grid_) != config.total_degree())
        throw ConfigError("boundary.g: winding " + std::to_string(bc_.winding(grid_)) +
                          " differs from the total degree " + std::to_string(config.total_degree()));
}

StreamFunction RenormalizedEnergy::stream_function(const VortexConfiguration& config) {
    check_config(config);
    return solve(config);
}

StreamFunction RenormalizedEnergy::solve(const VortexConfiguration& config) {
    StreamFunction sf;
    sf.config = config;
    sf.kind = bc_.kind;
    sf.psi_reg = ScalarField(grid_, Centering::Node);
    const double h = grid_.h();

    if (bc_.kind == BoundaryKind::Neumann) {
        std::fill(rhs_.begin(), rhs_.end(), 0.0);
        std::fill(sol_.begin(), sol_.end(), 0.0);
        for (const auto& [i, j] : boundary_loop(grid_)) sol_[grid_.index(i, j)] = -sf.singular(grid_.node(i, j));
        dirichlet_solver_.solve(sol_, rhs_, 0.0);
        sf.psi_reg.values = sol_;
    } else {
        // ∂_νψ_reg = ∂_τθ_g − ∂_νψ_sing, imposed through the reflected ghost
        // node: −Δₕψ gains 2σ/h at each boundary node per side.
        std::fill(rhs_.begin(), rhs_.end(), 0.0);
        std::size_t t = 0;
        const auto sides = sides_of(grid_);
        for (const Side& side : sides) {
            for (const auto& [i, j] : side.nodes) {
                const double sigma = tangential_phase_[t++] - dot(sf.singular_gradient(grid_.node(i, j)), side.normal);
                rhs_[grid_.index(i, j)] += 2.0 * sigma / h;
            }
        }
        neumann_solver_->solve(sol_, rhs_, 0.0);
        sf.psi_reg.values = sol_;
        // ½∮ψ ∂_νψ ds with ∂_νψ = ∂_τθ_g, trapezoid along each side.
        double bt = 0.0;
        t = 0;
        for (const Side& side : sides) {
            const std::size_t m = side.nodes.size();
            for (std::size_t s = 0; s < m; ++s, ++t) {
                const auto [i, j] = side.nodes[s];
                const double psi = sf.singular(grid_.node(i, j)) + sf.psi_reg(i, j);
                const double w = (s == 0 || s == m - 1) ? 0.5 * h : h;
                bt += 0.5 * w * psi * tangential_phase_[t];
            }
        }
        sf.boundary_term = bt;
    }
    for (double v : sf.psi_reg.values)
        if (!std::isfinite(v)) throw SolverFailure("stream_function: non-finite regular part");
    return sf;
}

RenEnergyValue RenormalizedEnergy::energy(const VortexConfiguration& config) {
    const StreamFunction sf = stream_function(config);
    RenEnergyValue v;
    v.pair_term = pair_energy(config);
    for (std::size_t k = 0; k < config.size(); ++k)
        v.regular_term -= pi * config.degrees[k] * sf.regular(config.positions[k]);
    v.boundary_term = sf.boundary_term;
    v.W = v.pair_term + v.regular_term + v.boundary_term;
    return v;
}

std::vector<Vec2> RenormalizedEnergy::gradient(const VortexConfiguration& config, GradWOptions options) {
    check_config(config);
    std::vector<Vec2> g = grad_W_pairwise(config);
    const double h = grid_.h();
    for (std::size_t k = 0; k < config.size(); ++k) {
        const double rb = grid_.distance_to_boundary(config.positions[k]);
        double delta = options.delta;
        if (delta <= 0.0) delta = std::min(std::max(rb / 10.0, 4.5 * h), rb / 8.0);
        auto shifted = [&](Vec2 offset) {
            VortexConfiguration c = config;
            c.positions[k] += offset;
            // The regular part only sees the distance to the boundary; skip
            // the pair-distance precondition for the shifted copies.
            const StreamFunction sf = solve(c);
            double w = sf.boundary_term;
            for (std::size_t l = 0; l < c.size(); ++l) w -= pi * c.degrees[l] * sf.regular(c.positions[l]);
            return w;
        };
        for (int axis = 0; axis < 2; ++axis) {
            const Vec2 e = axis == 0 ? Vec2{delta, 0.0} : Vec2{0.0, delta};
            const double d = (-shifted(2.0 * e) + 8.0 * shifted(e) - 8.0 * shifted(-1.0 * e) + shifted(-2.0 * e)) /
                             (12.0 * delta);
            if (axis == 0) g[k].x += d;
            else g[k].y += d;
        }
    }
    return g;
}

StreamFunction stream_function(const VortexConfiguration& config, const BoundaryCondition& bc,
                               const Grid& grid) {
    RenormalizedEnergy re(grid, bc);
    return re.stream_function(config);
}

RenEnergyValue renormalized_energy(const VortexConfiguration& config, const BoundaryCondition& bc,
                                   const Grid& grid) {
    RenormalizedEnergy re(grid, bc);
    return re.energy(config);
}

std::vector<Vec2> grad_W(const VortexConfiguration& config, const BoundaryCondition& bc,
                         const Grid& grid, GradWOptions options) {
    RenormalizedEnergy re(grid, bc);
    return re.gradient(config, options);
}

StressIdentityResult stress_identity_check(const VortexConfiguration& config, const BoundaryCondition& bc,
                          const Grid& grid, std::size_t k, const ScalarTest& phi, double s) {
    if (k >= config.size()) throw ConfigError("stress_identity_check: vortex index out of range");
    const double rho = config.rho(grid);
    if (!(s > 0.0 && s < rho)) throw TestFunctionInvalid("stress_identity_check: need 0 < s < rho");
    RenormalizedEnergy re(grid, bc);
    const StreamFunction sf = re.stream_function(config);
    const auto grad_reg = gradient(sf.psi_reg);

    double scale = 0.0;
    for (int j = 0; j < grid.n2(); ++j)
        for (int i = 0; i < grid.n1(); ++i) scale = std::max(scale, std::abs(phi(grid.node(i, j), 0.0).value));
    const double tol = 1e-10 * std::max(1.0, scale);

    double lhs = 0.0;
    for (int j = 0; j < grid.n2(); ++j) {
        for (int i = 0; i < grid.n1(); ++i) {
            const Vec2 x = grid.node(i, j);
            const Jet jet = phi(x, 0.0);
            const double hess = std::abs(jet.hess.xx) + std::abs(jet.hess.xy) + std::abs(jet.hess.yy);
            if (distance(x, config.positions[k]) < s && hess > tol / (s * s))
                throw TestFunctionInvalid("stress_identity_check: test function is not affine near the vortex");
            for (std::size_t l = 0; l < config.size(); ++l) {
                if (l == k || distance(x, config.positions[l]) >= 0.5 * rho) continue;
                if (std::abs(jet.value) > tol || norm(jet.grad) > tol / rho)
                    throw TestFunctionInvalid("stress_identity_check: test function does not vanish near vortex " +
                                              std::to_string(l));
            }
            if (grid.in_collar(i, j, 2) && (std::abs(jet.value) > tol || norm(jet.grad) > tol))
                throw TestFunctionInvalid("stress_identity_check: test function does not vanish near the boundary");
            if (hess == 0.0) continue;
            // grad curl φ = [[−φ₁₂, −φ₂₂], [φ₁₁, φ₁₂]]
            const Mat2 m{-jet.hess.xy, -jet.hess.yy, jet.hess.xx, jet.hess.xy};
            const Vec2 jv = rot90(sf.singular_gradient(x) + grad_reg(i, j));
            const Mat2 jj{jv.x * jv.x, jv.x * jv.y, jv.y * jv.x, jv.y * jv.y};
            lhs += grid.trapezoid_weight(i, j) * frobenius_product(m, jj);
        }
    }
    const auto gw = re.gradient(config);
    const Jet at = phi(config.positions[k], 0.0);
    const Vec2 curl_phi{-at.grad.y, at.grad.x};
    return {lhs, -dot(curl_phi, gw[k])};
}

}  // namespace glv
