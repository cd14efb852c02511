#include "glv/boundary.hpp"

#include <cmath>
#include <numbers>

namespace glv {

cplx BoundaryCondition::g(Vec2 x) const {
    cplx v = std::polar(1.0, g_phase);
    for (std::size_t k = 0; k < g_sources.size(); ++k) {
        const Vec2 d = x - g_sources.positions[k];
        cplx z{d.x, d.y};
        z /= std::abs(z);
        v *= g_sources.degrees[k] > 0 ? z : std::conj(z);
    }
    return v;
}

std::vector<std::pair<int, int>> boundary_loop(const Grid& grid) {
    const int n1 = grid.n1(), n2 = grid.n2();
    std::vector<std::pair<int, int>> loop;
    loop.reserve(2 * (n1 + n2));
    for (int i = 0; i < n1 - 1; ++i) loop.emplace_back(i, 0);
    for (int j = 0; j < n2 - 1; ++j) loop.emplace_back(n1 - 1, j);
    for (int i = n1 - 1; i > 0; --i) loop.emplace_back(i, n2 - 1);
    for (int j = n2 - 1; j > 0; --j) loop.emplace_back(0, j);
    return loop;
}

namespace {

template <class Value>
int winding_of(const std::vector<std::pair<int, int>>& loop, Value value) {
    double total = 0.0;
    for (std::size_t n = 0; n < loop.size(); ++n) {
        const auto [i0, j0] = loop[n];
        const auto [i1, j1] = loop[(n + 1) % loop.size()];
        total += std::arg(value(i1, j1) * std::conj(value(i0, j0)));
    }
    return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

}  // namespace

int BoundaryCondition::winding(const Grid& grid) const {
    return winding_of(boundary_loop(grid), [&](int i, int j) { return g(grid.node(i, j)); });
}

int boundary_winding(const ComplexField& u) {
    return winding_of(boundary_loop(u.grid), [&](int i, int j) { return u(i, j); });
}

void BoundaryCondition::apply(ComplexField& u) const {
    if (kind != BoundaryKind::Dirichlet) return;
    const Grid& grid = u.grid;
    for (const auto& [i, j] : boundary_loop(grid)) u(i, j) = g(grid.node(i, j));
}

}  // namespace glv
