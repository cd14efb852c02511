#include "glv/external_fields.hpp"

#include <cmath>

#include "glv/errors.hpp"
#include "glv/test_functions.hpp"

namespace glv {

std::string to_string(FieldSpec::Family f) {
    switch (f) {
        case FieldSpec::Family::Zero: return "zero";
        case FieldSpec::Family::Constant: return "constant";
        case FieldSpec::Family::Rotation: return "rotation";
        case FieldSpec::Family::Shear: return "shear";
        case FieldSpec::Family::Polynomial: return "polynomial";
    }
    return "zero";
}

FieldSpec::Family parse_family(const std::string& name) {
    if (name == "zero") return FieldSpec::Family::Zero;
    if (name == "constant") return FieldSpec::Family::Constant;
    if (name == "rotation") return FieldSpec::Family::Rotation;
    if (name == "shear") return FieldSpec::Family::Shear;
    if (name == "polynomial") return FieldSpec::Family::Polynomial;
    throw ConfigError("unknown field family '" + name + "'");
}

ExternalFields::ExternalFields(FieldSpec f, FieldSpec g, Vec2 lo, Vec2 hi)
    : f_(std::move(f)), g_(std::move(g)), lo_(lo), hi_(hi) {}

Vec2 ExternalFields::profile(const FieldSpec& s, Vec2 x) const {
    Vec2 v{};
    const Vec2 d = x - s.center;
    switch (s.family) {
        case FieldSpec::Family::Zero:
            return {};
        case FieldSpec::Family::Constant:
            v = s.vector;
            break;
        case FieldSpec::Family::Rotation:
            v = s.omega * rot90(d);
            break;
        case FieldSpec::Family::Shear:
            v = {s.rate * d.y, 0.0};
            break;
        case FieldSpec::Family::Polynomial:
            for (const auto& m : s.poly_x) v.x += m.coef * std::pow(d.x, m.px) * std::pow(d.y, m.py);
            for (const auto& m : s.poly_y) v.y += m.coef * std::pow(d.x, m.px) * std::pow(d.y, m.py);
            break;
    }
    if (s.cutoff_width > 0.0) v *= plateau_cutoff(x, lo_, hi_, s.cutoff_margin, s.cutoff_width).value;
    return v;
}

double ExternalFields::ramp(const FieldSpec& s, double t) {
    return s.ramp_time > 0.0 ? smooth_step(t / s.ramp_time) : 1.0;
}

Vec2 ExternalFields::F(Vec2 x, double t) const { return ramp(f_, t) * profile(f_, x); }
Vec2 ExternalFields::G(Vec2 x, double t) const { return ramp(g_, t) * profile(g_, x); }

VectorField ExternalFields::sample(const FieldSpec& s, const Grid& grid, double t, bool with_ramp) const {
    VectorField out(grid, Centering::Node);
    if (s.is_zero()) return out;
    const double r = with_ramp ? ramp(s, t) : 1.0;
    for (int j = 0; j < grid.n2(); ++j)
        for (int i = 0; i < grid.n1(); ++i) out(i, j) = r * profile(s, grid.node(i, j));
    return out;
}

VectorField ExternalFields::sample_F(const Grid& grid, double t) const { return sample(f_, grid, t, true); }
VectorField ExternalFields::sample_G(const Grid& grid, double t) const { return sample(g_, grid, t, true); }
VectorField ExternalFields::sample_F_profile(const Grid& grid) const { return sample(f_, grid, 0.0, false); }
VectorField ExternalFields::sample_G_profile(const Grid& grid) const { return sample(g_, grid, 0.0, false); }

Admissibility check_admissibility(const ExternalFields& fields, const Grid& grid,
                                  const std::vector<double>& times) {
    constexpr double tol = 1e-12;
    Admissibility a;
    const int n1 = grid.n1(), n2 = grid.n2();
    for (int j = 0; j < n2; ++j) {
        for (int i = 0; i < n1; ++i) {
            if (!grid.is_boundary(i, j)) continue;
            const Vec2 x = grid.node(i, j);
            a.max_F_boundary = std::max(a.max_F_boundary, norm(fields.F(x, 0.0)));
            a.max_G_boundary = std::max(a.max_G_boundary, norm(fields.G(x, 0.0)));
            // Outward normals; corners check both sides.
            std::vector<Vec2> normals;
            if (i == 0) normals.push_back({-1.0, 0.0});
            if (i == n1 - 1) normals.push_back({1.0, 0.0});
            if (j == 0) normals.push_back({0.0, -1.0});
            if (j == n2 - 1) normals.push_back({0.0, 1.0});
            for (double t : times)
                for (Vec2 nu : normals)
                    a.max_G_normal = std::max(a.max_G_normal, std::abs(dot(fields.G(x, t), nu)));
        }
    }
    a.F_zero_at_t0_boundary = a.max_F_boundary <= tol;
    a.G_zero_at_t0_boundary = a.max_G_boundary <= tol;
    a.G_tangential = a.max_G_normal <= tol;
    return a;
}

void require_admissible(const ExternalFields& fields, const Grid& grid, BoundaryKind kind,
                        double horizon) {
    std::vector<double> times;
    for (int k = 0; k <= 8; ++k) times.push_back(horizon * k / 8.0);
    const Admissibility a = check_admissibility(fields, grid, times);
    if (!a.F_zero_at_t0_boundary)
        throw ConfigError("fields.F: must vanish on the boundary at t = 0 (max " +
                          std::to_string(a.max_F_boundary) + ")");
    if (!a.G_zero_at_t0_boundary)
        throw ConfigError("fields.G: must vanish on the boundary at t = 0 (max " +
                          std::to_string(a.max_G_boundary) + ")");
    if (kind == BoundaryKind::Neumann && !a.G_tangential)
        throw ConfigError("fields.G: normal component must vanish on the boundary in Neumann runs (max " +
                          std::to_string(a.max_G_normal) + ")");
}

}  // namespace glv
