#include "glv/fields.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "glv/errors.hpp"

namespace glv {

Grid::Grid(Vec2 origin, Vec2 extent, int n1, int n2)
    : origin_(origin), extent_(extent), n1_(n1), n2_(n2) {
    if (n1 < 16 || n2 < 16) {
        throw ConfigError("grid: n1 and n2 must be at least 16 (got " + std::to_string(n1) +
                          "x" + std::to_string(n2) + ")");
    }
    if (!(extent.x > 0.0) || !(extent.y > 0.0)) {
        throw ConfigError("grid: extent must be positive");
    }
    const double hx = extent.x / (n1 - 1);
    const double hy = extent.y / (n2 - 1);
    if (std::abs(hx - hy) > 1e-12 * std::max(hx, hy)) {
        throw ConfigError("grid: spacing differs between axes (hx=" + std::to_string(hx) +
                          ", hy=" + std::to_string(hy) + ")");
    }
    h_ = hx;
}

double Grid::distance_to_boundary(Vec2 p) const {
    const double dx = std::min(p.x - origin_.x, origin_.x + extent_.x - p.x);
    const double dy = std::min(p.y - origin_.y, origin_.y + extent_.y - p.y);
    return std::min(dx, dy);
}

bool Grid::contains(Vec2 p) const { return distance_to_boundary(p) > 0.0; }

void require_same_grid(const Grid& a, const Grid& b, const char* what) {
    if (!(a == b)) throw GridMismatch(std::string(what) + ": grid mismatch");
}

bool ComplexField::all_finite() const {
    return std::all_of(values.begin(), values.end(),
                       [](cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

EpsilonScaling EpsilonScaling::make(double eps, double lambda0) {
    if (!(eps > 0.0 && eps < 1.0)) throw ConfigError("epsilon must lie in (0, 1)");
    if (!(lambda0 > 0.0)) throw ConfigError("lambda0 must be positive");
    EpsilonScaling s;
    s.eps = eps;
    s.k_eps = 1.0 / std::log(1.0 / eps);
    s.lambda0 = lambda0;
    s.lambda_eps = lambda0 * s.k_eps;
    return s;
}

}  // namespace glv
