#include "glv/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "glv/errors.hpp"
#include "glv/initial_data.hpp"
#include "glv/ode_law.hpp"
#include "glv/operators.hpp"
#include "glv/radial_profile.hpp"
#include "glv/ren_energy.hpp"
#include "glv/snapshot.hpp"
#include "glv/test_functions.hpp"

namespace glv {

std::string to_string(RunStatus s) {
    switch (s) {
        case RunStatus::Completed: return "completed";
        case RunStatus::Collision: return "collision";
        case RunStatus::BoundaryExit: return "boundary_exit";
    }
    return "unknown";
}

ComplexField initial_field(const SimulationSetup& setup) {
    if (setup.initial_field) {
        require_same_grid(setup.initial_field->grid, setup.grid, "initial_field");
        return *setup.initial_field;
    }
    return well_prepared(setup.initial, setup.scaling, setup.grid, setup.bc);
}

namespace {

double kinetic_density(const ComplexField& u_t) {
    const Grid& g = u_t.grid;
    double s = 0.0;
    for (int j = 0; j < g.n2(); ++j)
        for (int i = 0; i < g.n1(); ++i) s += g.trapezoid_weight(i, j) * std::norm(u_t(i, j));
    return s;
}

double jacobian_mass(const ComplexField& u) {
    const ScalarField J = jacobian(u);
    double s = 0.0;
    for (double v : J.values) s += v;
    return s * u.grid.h() * u.grid.h();
}

double max_modulus(const ComplexField& u) {
    double m = 0.0;
    for (const cplx& v : u.values) m = std::max(m, std::abs(v));
    return m;
}

std::vector<double> momentum_pairings(const ComplexField& u, const ComplexField& u_t, const EpsilonScaling& s,
                                      const std::vector<NamedVectorTest>& bank) {
    const VectorField p = momentum(u, u_t);
    std::vector<double> out;
    for (const auto& w : bank) out.push_back(s.k_eps * pair_with_test(p, w.fn, u.time));
    return out;
}

FrameDiagnostics frame_diagnostics(const ComplexField& u, const VortexConfiguration& vortices,
                                   const EpsilonScaling& s, const std::vector<NamedScalarTest>& sbank,
                                   const std::vector<NamedVectorTest>& vbank) {
    const Grid& g = u.grid;
    const Vec2 lo = g.origin(), hi = g.origin() + g.extent();
    FrameDiagnostics d;
    d.momentum.assign(vbank.size(), 0.0);

    const ScalarField divj = divergence(current(u));
    for (const auto& phi : sbank) d.div_j.push_back(pair_with_test(divj, phi.fn, u.time));

    const ScalarField e = energy_density(u, s);
    const double rho = vortices.empty() ? 0.0 : vortices.rho(g);
    const double L = std::min(g.extent().x, g.extent().y);
    const ScalarTest far = [&](Vec2 x, double) {
        Jet j;
        j.value = plateau_cutoff(x, lo, hi, 0.05 * L, 0.2 * L).value;
        for (const Vec2& a : vortices.positions) {
            const double sigma = 0.25 * rho;
            j.value *= smooth_step((distance(x, a) - sigma) / sigma);
        }
        return j;
    };
    d.far_energy = s.k_eps * pair_with_test(e, far, u.time);

    const TensorField T = stress(u);
    for (const auto& w : vbank) {
        Vec2 v = s.k_eps * pair_with_test(T, w.fn, u.time);
        for (const Vec2& a : vortices.positions) v -= std::numbers::pi * w.fn(a, u.time);
        d.stress_defect.push_back(norm(v));
    }
    for (const Vec2& a : vortices.positions)
        d.equipartition.push_back(equipartition_defect(u, a, 0.5 * rho, s));
    return d;
}

double min_separation_or_inf(const VortexConfiguration& c) { return c.min_separation(); }

double min_wall_distance(const VortexConfiguration& c, const Grid& g) {
    double m = std::numeric_limits<double>::infinity();
    for (const Vec2& a : c.positions) m = std::min(m, g.distance_to_boundary(a));
    return m;
}

double event_margin_of(const Frame& f, const Grid& g, double radius) {
    return std::min(f.vortices.min_separation(), min_wall_distance(f.vortices, g)) - radius;
}

/// Linear interpolation of the crossing time of `value` through `level`.
double crossing(double t0, double v0, double t1, double v1, double level) {
    if (!std::isfinite(v0) || v1 == v0) return t1;
    const double s = std::clamp((v0 - level) / (v0 - v1), 0.0, 1.0);
    return t0 + s * (t1 - t0);
}

}  // namespace

TrajectoryRecord simulate(const SimulationSetup& setup) {
    const Grid& g = setup.grid;
    if (!(setup.T >= 0.0)) throw ConfigError("time.T: must be non-negative");
    if (!setup.initial.empty()) setup.initial.validate(g);
    require_admissible(setup.fields, g, setup.bc.kind, setup.T);

    TrajectoryRecord rec;
    rec.eps = setup.scaling.eps;
    rec.lambda0 = setup.scaling.lambda0;
    rec.h = g.h();
    rec.dt = setup.dt > 0.0 ? setup.dt : default_time_step(setup.scaling);
    const long total_steps = static_cast<long>(std::ceil(setup.T / rec.dt - 1e-9));
    if (total_steps > 0) rec.dt = setup.T / static_cast<double>(total_steps);
    rec.T = setup.T;
    rec.collision_radius = collision_radius(setup.scaling.eps, g.h());
    rec.gamma = core_energy_limit(default_profile());
    rec.bc_kind = setup.bc.kind;

    const int stride = setup.frame_stride > 0
                           ? setup.frame_stride
                           : std::max(1, static_cast<int>(std::lround(setup.frame_interval / rec.dt)));
    const double cap = mobility_cap(g.h(), stride * rec.dt, setup.v_max);

    Stepper stepper(g, rec.dt, setup.scaling, setup.bc, setup.fields, setup.stepper);
    RenormalizedEnergy energy(g, setup.bc);
    const auto sbank = scalar_test_bank(g.origin(), g.origin() + g.extent());
    const auto vbank = vector_test_bank(g.origin(), g.origin() + g.extent());
    const bool unforced = setup.fields.zero();

    PdeState state{initial_field(setup), 0, {}};
    std::optional<ComplexField> previous;
    VortexConfiguration tracked;
    int failures = 0;
    double kinetic = 0.0;
    double e_prev = unforced ? total_energy(state.u, setup.scaling) : 0.0;

    auto make_frame = [&](bool first) {
        Frame f;
        bool annihilated = false;
        f.t = state.time();
        f.step = state.step;
        f.kinetic = kinetic * setup.scaling.k_eps;
        f.dissipated = kinetic * setup.scaling.lambda_eps;
        f.jacobian_mass = jacobian_mass(state.u);
        f.boundary_winding = boundary_winding(state.u);
        f.max_modulus = max_modulus(state.u);
        f.neumann_flux = stepper.last_neumann_flux();
        try {
            Detection det = detect_vortices(state.u, setup.scaling.eps, setup.detection);
            if (first) {
                if (!setup.initial.empty()) {
                    const Assignment as = match_tracks(setup.initial, det.config, std::numeric_limits<double>::infinity());
                    VortexConfiguration ordered{{}, {}, f.t};
                    for (std::size_t k = 0; k < as.index.size(); ++k) {
                        ordered.positions.push_back(det.config.positions[as.index[k]]);
                        ordered.degrees.push_back(det.config.degrees[as.index[k]]);
                        f.cluster_size.push_back(det.cluster_size[as.index[k]]);
                        f.min_modulus.push_back(det.min_modulus[as.index[k]]);
                    }
                    f.vortices = ordered;
                } else {
                    f.vortices = det.config;
                    f.cluster_size = det.cluster_size;
                    f.min_modulus = det.min_modulus;
                }
            } else {
                if (det.config.size() < tracked.size() && det.config.total_degree() == tracked.total_degree() &&
                    !rec.frames.empty() && rec.frames.back().detected &&
                    event_margin_of(rec.frames.back(), g, rec.collision_radius) < rec.collision_radius) {
                    // A ± pair vanished between frames right next to the
                    // collision radius.
                    rec.status = RunStatus::Collision;
                    rec.t_star = 0.5 * (rec.frames.back().t + f.t);
                    annihilated = true;
                }
                const Assignment as = annihilated ? Assignment{} : match_tracks(tracked, det.config, cap * (1 + failures));
                f.vortices.time = f.t;
                for (std::size_t k = 0; k < as.index.size(); ++k) {
                    f.vortices.positions.push_back(det.config.positions[as.index[k]]);
                    f.vortices.degrees.push_back(det.config.degrees[as.index[k]]);
                    f.cluster_size.push_back(det.cluster_size[as.index[k]]);
                    f.min_modulus.push_back(det.min_modulus[as.index[k]]);
                }
            }
            f.vortices.time = f.t;
            tracked = f.vortices;
            failures = 0;
        } catch (const TrackingError& err) {
            if (first) throw;
            if (++failures > setup.max_tracking_failures)
                throw TrackingLost("tracking failed for " + std::to_string(failures) + " consecutive frames at t = " +
                                   std::to_string(f.t) + ": " + err.what());
            f.detected = false;
        }
        if (annihilated) f.detected = false;
        if (f.detected && !f.vortices.empty()) {
            const double sep = f.vortices.min_separation();
            const double wall = min_wall_distance(f.vortices, g);
            if (sep <= rec.collision_radius || wall <= rec.collision_radius) {
                rec.status = sep - rec.collision_radius <= wall - rec.collision_radius ? RunStatus::Collision
                                                                                      : RunStatus::BoundaryExit;
            }
        }
        if (f.detected && rec.status == RunStatus::Completed) {
            f.excess = energy_excess(state.u, f.vortices, setup.scaling, rec.gamma, energy, setup.excess_threshold);
            if (setup.diagnostics) f.diagnostics = frame_diagnostics(state.u, f.vortices, setup.scaling, sbank, vbank);
        } else {
            f.excess.energy = total_energy(state.u, setup.scaling);
            f.excess.W = f.excess.W_eps = f.excess.excess = std::numeric_limits<double>::quiet_NaN();
            f.excess.gamma = rec.gamma;
        }
        if (setup.diagnostics && f.diagnostics && state.u_t)
            f.diagnostics->momentum = momentum_pairings(state.u, *state.u_t, setup.scaling, vbank);
        if (setup.residuals && previous) {
            const ComplexField win[2] = {*previous, state.u};
            f.residuals = conservation_residuals(std::span<const ComplexField>(win, 2), setup.scaling, setup.fields);
        }
        if (setup.snapshot_every > 0 && !setup.snapshot_dir.empty() &&
            rec.frames.size() % static_cast<std::size_t>(setup.snapshot_every) == 0) {
            char name[64];
            std::snprintf(name, sizeof name, "frame_%06zu.glv", rec.frames.size());
            write_snapshot(setup.snapshot_dir / name, state.u, setup.scaling.eps);
        }
        if (annihilated) {
        } else if (rec.status != RunStatus::Completed && !rec.frames.empty()) {
            const Frame& last = rec.frames.back();
            if (rec.status == RunStatus::Collision)
                rec.t_star = crossing(last.t, min_separation_or_inf(last.vortices), f.t, f.vortices.min_separation(),
                                      rec.collision_radius);
            else
                rec.t_star = crossing(last.t, min_wall_distance(last.vortices, g), f.t,
                                      min_wall_distance(f.vortices, g), rec.collision_radius);
        } else if (rec.status != RunStatus::Completed) {
            rec.t_star = f.t;
        }
        rec.frames.push_back(std::move(f));
        if (setup.progress) setup.progress(state.time(), setup.T);
    };

    rec.degrees = setup.initial.degrees;
    make_frame(true);
    if (setup.initial.empty()) rec.degrees = rec.frames.front().vortices.degrees;

    // Frames are spaced by `stride` steps, tightened near an event so that
    // the collision radius is not skipped over.
    long next_frame = stride;
    auto event_margin = [&](const Frame& f) { return event_margin_of(f, g, rec.collision_radius); };
    auto schedule = [&](long n) {
        long gap = stride;
        const std::size_t m = rec.frames.size();
        if (m >= 2 && rec.frames[m - 1].detected && rec.frames[m - 2].detected &&
            !rec.frames[m - 1].vortices.empty()) {
            const Frame& a = rec.frames[m - 2];
            const Frame& b = rec.frames[m - 1];
            const double ma = event_margin(a), mb = event_margin(b);
            const double rate = (ma - mb) / (b.t - a.t);
            if (rate > 0.0 && std::isfinite(mb)) {
                const double tau = mb / rate;
                gap = std::clamp(static_cast<long>(std::floor(0.25 * tau / rec.dt)), 1L, static_cast<long>(stride));
            }
        }
        next_frame = std::min(n + gap, total_steps);
    };

    for (long n = 1; n <= total_steps && rec.status == RunStatus::Completed; ++n) {
        const bool frame_step = n == next_frame || n == total_steps;
        if (frame_step && setup.residuals) previous = state.u;
        stepper.advance(state);
        const double kin = kinetic_density(*state.u_t) * rec.dt;
        kinetic += kin;
        if (unforced) {
            const double e = stepper.last_energy().value_or(total_energy(state.u, setup.scaling));
            rec.max_energy_increase = std::max(rec.max_energy_increase, e - e_prev);
            e_prev = e;
        }
        if (n == 1 && setup.diagnostics && rec.frames.front().diagnostics) {
            ComplexField u0 = state.u;
            for (std::size_t k = 0; k < u0.values.size(); ++k) u0.values[k] -= rec.dt * state.u_t->values[k];
            u0.time = 0.0;
            rec.frames.front().diagnostics->momentum = momentum_pairings(u0, *state.u_t, setup.scaling, vbank);
        }
        if (frame_step) {
            make_frame(false);
            schedule(n);
        }
    }
    rec.steps = state.step;
    if (rec.status == RunStatus::Collision && !rec.frames.empty() && !rec.frames.back().detected)
        rec.message = "a vortex pair annihilated between frames near t = " + std::to_string(rec.t_star);
    else if (rec.status == RunStatus::Collision)
        rec.message = "vortices reached the collision radius at t = " + std::to_string(rec.t_star);
    else if (rec.status == RunStatus::BoundaryExit)
        rec.message = "a vortex reached the boundary layer at t = " + std::to_string(rec.t_star);
    return rec;
}

}  // namespace glv
