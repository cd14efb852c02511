#include "glv/vortex.hpp"

#include <cmath>
#include <limits>

#include "glv/errors.hpp"

namespace glv {

int VortexConfiguration::total_degree() const {
    int s = 0;
    for (int d : degrees) s += d;
    return s;
}

double VortexConfiguration::min_separation() const {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < positions.size(); ++k)
        for (std::size_t l = k + 1; l < positions.size(); ++l)
            m = std::min(m, distance(positions[k], positions[l]));
    return m;
}

double VortexConfiguration::rho(const Grid& grid) const {
    double r = 0.5 * min_separation();
    for (const Vec2& a : positions) r = std::min(r, grid.distance_to_boundary(a));
    return r;
}

void VortexConfiguration::validate(const Grid& grid) const {
    if (positions.size() != degrees.size())
        throw ConfigError("initial: positions and degrees have different lengths");
    for (std::size_t k = 0; k < positions.size(); ++k) {
        if (degrees[k] != 1 && degrees[k] != -1)
            throw ConfigError("initial.degrees: every degree must be +1 or -1");
        if (!grid.contains(positions[k]) || grid.distance_to_boundary(positions[k]) <= 0.0)
            throw ConfigError("initial.positions: point " + std::to_string(k) + " is not interior");
    }
}

}  // namespace glv
