#include "glv/pde.hpp"

#include <algorithm>
#include <cmath>

#include "glv/errors.hpp"
#include "glv/operators.hpp"

namespace glv {

double default_time_step(const EpsilonScaling& scaling) {
    const double e2 = scaling.eps * scaling.eps;
    return std::min(0.25 * e2, 0.5 * scaling.lambda_eps * e2);
}

Stepper::Stepper(const Grid& grid, double dt, EpsilonScaling scaling, BoundaryCondition bc,
                 ExternalFields fields, StepperOptions options, SourceTerm source)
    : grid_(grid),
      dt_(dt),
      scaling_(scaling),
      bc_(std::move(bc)),
      fields_(std::move(fields)),
      options_(options),
      source_(std::move(source)),
      solver_(grid, bc_.kind),
      f_profile_(fields_.sample_F_profile(grid)),
      g_profile_(fields_.sample_G_profile(grid)),
      rhs_(grid.size()),
      extra_(grid.size()) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("time.dt: must be positive");
}

void Stepper::build_rhs(const ComplexField& u, std::vector<cplx>& rhs) {
    const double t = u.time;
    const double inv_e2 = 1.0 / (scaling_.eps * scaling_.eps);
    const cplx alpha = cplx(scaling_.lambda_eps, 1.0) / dt_;
    const double fr = fields_.f_spec().is_zero() ? 0.0 : scaling_.k_eps * fields_.F_ramp(t);
    const double gr = fields_.g_spec().is_zero() ? 0.0 : fields_.G_ramp(t);
    std::vector<cplx> d1, d2;
    if (fr != 0.0 || gr != 0.0) {
        d1 = derivative(u, 0);
        d2 = derivative(u, 1);
    }
    for (std::size_t n = 0; n < u.values.size(); ++n) {
        const cplx v = u.values[n];
        cplx r = alpha * v + (1.0 - std::norm(v)) * v * inv_e2;
        if (fr != 0.0) {
            const Vec2 f = f_profile_.values[n];
            r -= fr * (f.x * d1[n] + f.y * d2[n]);
        }
        if (gr != 0.0) {
            const Vec2 g = g_profile_.values[n];
            r -= gr * cplx(0.0, 1.0) * (g.x * d1[n] + g.y * d2[n]);
        }
        rhs[n] = r;
    }
    if (source_) {
        std::fill(extra_.begin(), extra_.end(), cplx{});
        source_(t, grid_, extra_);
        for (std::size_t n = 0; n < rhs.size(); ++n) rhs[n] += extra_[n];
    }
}

double Stepper::neumann_flux(const std::vector<cplx>& u, const std::vector<cplx>& rhs) const {
    if (bc_.kind != BoundaryKind::Neumann) return 0.0;
    const int n1 = grid_.n1(), n2 = grid_.n2();
    const double h = grid_.h(), h2 = h * h;
    const cplx alpha = cplx(scaling_.lambda_eps, 1.0) / dt_;
    auto at = [&](int i, int j) { return u[grid_.index(i, j)]; };
    double worst = 0.0;
    // Along each side, the discrete equation at a boundary node determines
    // the ghost value outside; compare it with the interior neighbour.
    auto check = [&](int i, int j, int gi, int gj, int ti, int tj) {
        const cplx c = at(i, j);
        const cplx tangential = at(i - ti, j - tj) + at(i + ti, j + tj);
        const cplx inner = at(i - gi, j - gj);
        const cplx ghost = (alpha * c - rhs[grid_.index(i, j)]) * h2 - tangential - inner + 4.0 * c;
        worst = std::max(worst, std::abs(ghost - inner) / (2.0 * h));
    };
    for (int i = 1; i < n1 - 1; ++i) {
        check(i, 0, 0, -1, 1, 0);
        check(i, n2 - 1, 0, 1, 1, 0);
    }
    for (int j = 1; j < n2 - 1; ++j) {
        check(0, j, -1, 0, 0, 1);
        check(n1 - 1, j, 1, 0, 0, 1);
    }
    return worst;
}

void Stepper::advance(PdeState& state) {
    require_same_grid(state.u.grid, grid_, "step");
    const bool guarded = options_.energy_guard > 0.0 && fields_.zero() && !source_;
    double e_old = 0.0;
    if (guarded) e_old = last_energy_.value_or(total_energy(state.u, scaling_));

    build_rhs(state.u, rhs_);
    ComplexField next(grid_, {}, state.u.time + dt_);
    if (bc_.kind == BoundaryKind::Dirichlet) {
        next.values = state.u.values;
        bc_.apply(next);
    }
    solver_.solve(next.values, rhs_, cplx(scaling_.lambda_eps, 1.0) / dt_);
    if (!next.all_finite())
        throw NonFinite("step " + std::to_string(state.step + 1) + ": non-finite values at t = " +
                        std::to_string(next.time));
    last_flux_ = neumann_flux(next.values, rhs_);

    if (guarded) {
        const double e_new = total_energy(next, scaling_);
        if (e_new - e_old > options_.energy_guard * std::max(1.0, std::abs(e_old)))
            throw StabilityViolation("step " + std::to_string(state.step + 1) +
                                     ": energy increased from " + std::to_string(e_old) + " to " +
                                     std::to_string(e_new) + "; reduce time.dt");
        last_energy_ = e_new;
    } else {
        last_energy_.reset();
    }

    ComplexField ut(grid_, {}, next.time);
    for (std::size_t n = 0; n < ut.values.size(); ++n)
        ut.values[n] = (next.values[n] - state.u.values[n]) / dt_;
    state.u = std::move(next);
    state.u_t = std::move(ut);
    ++state.step;
}

PdeState Stepper::step(const PdeState& state) {
    PdeState out = state;
    advance(out);
    return out;
}

PdeState step(const PdeState& state, double dt, const EpsilonScaling& scaling,
              const BoundaryCondition& bc, const ExternalFields& fields) {
    Stepper s(state.u.grid, dt, scaling, bc, fields);
    return s.step(state);
}

}  // namespace glv
