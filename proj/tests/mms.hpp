#pragma once

// Manufactured solution u = Σ c_m(t) cos(aπx) cos(bπy) on the unit square,
// c_m(t) = c0 cos(ωt) + c1 sin(ωt). Every mode satisfies ∂_νu = 0.

#include <cmath>
#include <numbers>
#include <vector>

#include "glv/boundary.hpp"
#include "glv/conservation.hpp"
#include "glv/external_fields.hpp"
#include "glv/pde.hpp"

namespace glv::mms {

struct Mode {
    double a, b;
    cplx c0, c1;
    double w;
};

struct Value {
    cplx u, ut, ux, uy, lap;
};

inline const std::vector<Mode>& modes() {
    static const std::vector<Mode> m{{0, 0, {0.8, 0.1}, {0, 0.1}, 1.0},
                                     {1, 1, {0.3, 0}, {0, 0.2}, 1.0},
                                     {1, 2, {0, 0.15}, {0.1, 0}, 2.0}};
    return m;
}

inline Value evaluate(Vec2 p, double t) {
    constexpr double pi = std::numbers::pi;
    Value e{};
    for (const Mode& m : modes()) {
        const cplx c = m.c0 * std::cos(m.w * t) + m.c1 * std::sin(m.w * t);
        const cplx cd = m.w * (-m.c0 * std::sin(m.w * t) + m.c1 * std::cos(m.w * t));
        const double cx = std::cos(m.a * pi * p.x), cy = std::cos(m.b * pi * p.y);
        const double sx = std::sin(m.a * pi * p.x), sy = std::sin(m.b * pi * p.y);
        e.u += c * cx * cy;
        e.ut += cd * cx * cy;
        e.ux += c * (-m.a * pi * sx * cy);
        e.uy += c * (-m.b * pi * cx * sy);
        e.lap += -pi * pi * (m.a * m.a + m.b * m.b) * c * cx * cy;
    }
    return e;
}

struct Problem {
    EpsilonScaling scaling = EpsilonScaling::make(0.3, 1.0);
    ExternalFields fields;

    Problem() {
        FieldSpec f;
        f.family = FieldSpec::Family::Constant;
        f.vector = {1.0, 0.5};
        FieldSpec g;
        g.family = FieldSpec::Family::Rotation;
        g.omega = 1.5;
        fields = ExternalFields(f, g, {0, 0}, {1, 1});
    }

    /// S = (λ+i)∂ₜu + k(F·∇)u + i(G·∇)u − Δu − (1 − |u|²)u/ε².
    [[nodiscard]] SourceTerm source() const {
        return [s = scaling, f = fields](double t, const Grid& g, std::vector<cplx>& out) {
            const cplx I(0, 1);
            for (int j = 0; j < g.n2(); ++j)
                for (int i = 0; i < g.n1(); ++i) {
                    const Vec2 x = g.node(i, j);
                    const Value e = evaluate(x, t);
                    const Vec2 F = f.F(x, t), G = f.G(x, t);
                    out[g.index(i, j)] = cplx(s.lambda_eps, 1.0) * e.ut + s.k_eps * (F.x * e.ux + F.y * e.uy) +
                                         I * (G.x * e.ux + G.y * e.uy) - e.lap -
                                         (1.0 - std::norm(e.u)) * e.u / (s.eps * s.eps);
                }
        };
    }

    [[nodiscard]] static ComplexField sample(const Grid& g, double t) {
        ComplexField u(g, {}, t);
        for (int j = 0; j < g.n2(); ++j)
            for (int i = 0; i < g.n1(); ++i) u(i, j) = evaluate(g.node(i, j), t).u;
        return u;
    }
};

struct RunResult {
    ResidualReport residuals;
    double max_error = 0.0;
};

/// Steps the forced flow from the exact data to T and evaluates the
/// residuals on the last step.
inline RunResult run(int n, double dt, double T) {
    const Problem p;
    const SourceTerm src = p.source();
    const Grid g = Grid::unit_square(n);
    Stepper st(g, dt, p.scaling, BoundaryCondition::neumann(), p.fields, {}, src);
    PdeState s{Problem::sample(g, 0.0), 0, {}};
    const long steps = std::lround(T / dt);
    ComplexField prev = s.u;
    for (long k = 0; k < steps; ++k) {
        prev = s.u;
        st.advance(s);
    }
    RunResult r;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            r.max_error = std::max(r.max_error, std::abs(s.u(i, j) - evaluate(g.node(i, j), s.time()).u));
    const ComplexField w[2] = {prev, s.u};
    r.residuals = conservation_residuals(std::span<const ComplexField>(w, 2), p.scaling, p.fields, src);
    return r;
}

/// Residuals of the exact solution sampled at t − dt and t.
inline ResidualReport exact_residuals(int n, double dt, double t) {
    const Problem p;
    const Grid g = Grid::unit_square(n);
    const ComplexField w[2] = {Problem::sample(g, t - dt), Problem::sample(g, t)};
    return conservation_residuals(std::span<const ComplexField>(w, 2), p.scaling, p.fields, p.source());
}

}  // namespace glv::mms
