#pragma once

#include <vector>

#include "glv/fields.hpp"

namespace glv {

/// N points with degrees ±1.
struct VortexConfiguration {
    std::vector<Vec2> positions;
    std::vector<int> degrees;
    double time = 0.0;

    [[nodiscard]] std::size_t size() const { return positions.size(); }
    [[nodiscard]] bool empty() const { return positions.empty(); }
    [[nodiscard]] int total_degree() const;
    /// ρ = min over pairs of half the distance and over points of the
    /// distance to the boundary of `grid`'s rectangle.
    [[nodiscard]] double rho(const Grid& grid) const;
    /// Minimum pairwise distance (+∞ for fewer than two points).
    [[nodiscard]] double min_separation() const;
    /// Throws ConfigError if the degrees are not ±1, sizes differ, or any
    /// point lies outside the grid rectangle.
    void validate(const Grid& grid) const;
};

}  // namespace glv
