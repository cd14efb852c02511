#pragma once

#include <string>
#include <vector>

#include "glv/fields.hpp"
#include "glv/spectral.hpp"

namespace glv {

/// One monomial term coef·(x−x₀)^px·(y−y₀)^py of a polynomial component.
struct Monomial {
    int px = 0;
    int py = 0;
    double coef = 0.0;
};

/// Built-in smooth vector field families, each multiplied by a plateau
/// cutoff that vanishes near the domain boundary and by an optional time
/// ramp.
struct FieldSpec {
    enum class Family { Zero, Constant, Rotation, Shear, Polynomial };
    Family family = Family::Zero;
    Vec2 vector{};          // Constant
    double omega = 0.0;     // Rotation: ω·i(x − x₀)
    double rate = 0.0;      // Shear: (rate·(y − y₀), 0)
    Vec2 center{0.5, 0.5};  // x₀ for Rotation, Shear, Polynomial
    std::vector<Monomial> poly_x, poly_y;
    double cutoff_margin = 0.05;  // distance from ∂D where the field is zero
    double cutoff_width = 0.15;   // transition width; ≤ 0 disables the cutoff
    double ramp_time = 0.0;       // > 0: multiply by smooth_step(t / ramp_time)

    [[nodiscard]] bool is_zero() const { return family == Family::Zero; }
};

std::string to_string(FieldSpec::Family f);
FieldSpec::Family parse_family(const std::string& name);

/// The convective fields F and G of the flow, evaluated on a given rectangle.
class ExternalFields {
public:
    ExternalFields() = default;
    ExternalFields(FieldSpec f, FieldSpec g, Vec2 lo, Vec2 hi);

    [[nodiscard]] Vec2 F(Vec2 x, double t) const;
    [[nodiscard]] Vec2 G(Vec2 x, double t) const;
    [[nodiscard]] bool zero() const { return f_.is_zero() && g_.is_zero(); }
    [[nodiscard]] const FieldSpec& f_spec() const { return f_; }
    [[nodiscard]] const FieldSpec& g_spec() const { return g_; }

    /// Samples both fields on a grid at time t.
    [[nodiscard]] VectorField sample_F(const Grid& grid, double t) const;
    [[nodiscard]] VectorField sample_G(const Grid& grid, double t) const;
    /// Every family is a fixed spatial profile times a time ramp; these
    /// return the profile and the ramp separately.
    [[nodiscard]] VectorField sample_F_profile(const Grid& grid) const;
    [[nodiscard]] VectorField sample_G_profile(const Grid& grid) const;
    [[nodiscard]] double F_ramp(double t) const { return ramp(f_, t); }
    [[nodiscard]] double G_ramp(double t) const { return ramp(g_, t); }

private:
    [[nodiscard]] Vec2 profile(const FieldSpec& s, Vec2 x) const;
    [[nodiscard]] static double ramp(const FieldSpec& s, double t);
    [[nodiscard]] VectorField sample(const FieldSpec& s, const Grid& grid, double t, bool with_ramp) const;
    FieldSpec f_, g_;
    Vec2 lo_{}, hi_{1.0, 1.0};
};

/// Results of sampling the admissibility conditions on boundary nodes.
struct Admissibility {
    bool F_zero_at_t0_boundary = true;
    bool G_zero_at_t0_boundary = true;
    bool G_tangential = true;
    double max_F_boundary = 0.0;
    double max_G_boundary = 0.0;
    double max_G_normal = 0.0;
};

/// Samples F(·,0), G(·,0) and (G, ν) on the boundary nodes at the given
/// times, with tolerance 1e-12.
Admissibility check_admissibility(const ExternalFields& fields, const Grid& grid,
                                  const std::vector<double>& times);

/// Throws ConfigError naming the violated condition. Tangential G is only
/// required for Neumann runs.
void require_admissible(const ExternalFields& fields, const Grid& grid, BoundaryKind kind,
                        double horizon);

}  // namespace glv
