#include "glv/ode_law.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "glv/errors.hpp"

namespace glv {

std::string to_string(OdeStatus s) {
    switch (s) {
        case OdeStatus::Running: return "running";
        case OdeStatus::Collision: return "collision";
        case OdeStatus::BoundaryExit: return "boundary_exit";
    }
    return "unknown";
}

std::string to_string(TimeOperator op) {
    return op == TimeOperator::DegreeWeighted ? "degree_weighted" : "uniform";
}

TimeOperator parse_time_operator(const std::string& s) {
    if (s == "degree_weighted") return TimeOperator::DegreeWeighted;
    if (s == "uniform") return TimeOperator::Uniform;
    throw ConfigError("ode.time_operator: expected degree_weighted or uniform, got '" + s + "'");
}

Vec2 solve_mobility(double lambda0, int sigma, Vec2 r) {
    // (λ₀ + σi)⁻¹ = (λ₀ − σi)/(λ₀² + 1) as a complex number.
    const cplx v = as_cplx(r) * cplx(lambda0, -sigma) / (lambda0 * lambda0 + 1.0);
    return as_vec(v);
}

Vec2 apply_mobility(double lambda0, int sigma, Vec2 v) {
    return as_vec(cplx(lambda0, sigma) * as_cplx(v));
}

namespace {

OdeRhs assemble(const VortexConfiguration& config, const OdeParams& params, const std::vector<Vec2>& grad) {
    const std::size_t n = config.size();
    OdeRhs r;
    r.w_term.resize(n);
    r.f_term.resize(n);
    r.g_term.resize(n);
    r.velocity.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const Vec2 a = config.positions[k];
        const int d = config.degrees[k];
        r.w_term[k] = (-1.0 / std::numbers::pi) * grad[k];
        r.f_term[k] = params.fields.F(a, config.time);
        r.g_term[k] = static_cast<double>(d) * rot90(params.fields.G(a, config.time));
        r.velocity[k] = solve_mobility(params.lambda0, mobility_sign(params.time_operator, d), r.total(k));
    }
    return r;
}

double event_margin(const std::vector<Vec2>& p, const Grid& grid, double radius, OdeStatus* which) {
    double sep = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < p.size(); ++a)
        for (std::size_t b = a + 1; b < p.size(); ++b) sep = std::min(sep, distance(p[a], p[b]));
    double wall = std::numeric_limits<double>::infinity();
    for (const Vec2& x : p) wall = std::min(wall, grid.contains(x) ? grid.distance_to_boundary(x) : -1.0);
    const double m_sep = sep - radius, m_wall = wall - radius;
    if (which) *which = m_sep <= m_wall ? OdeStatus::Collision : OdeStatus::BoundaryExit;
    return std::min(m_sep, m_wall);
}

Vec2 hermite(double s, double dt, Vec2 p0, Vec2 p1, Vec2 v0, Vec2 v1) {
    const double s2 = s * s, s3 = s2 * s;
    const double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s, h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;
    return h00 * p0 + (h10 * dt) * v0 + h01 * p1 + (h11 * dt) * v1;
}

Vec2 hermite_derivative(double s, double dt, Vec2 p0, Vec2 p1, Vec2 v0, Vec2 v1) {
    const double s2 = s * s;
    const double d00 = 6 * s2 - 6 * s, d10 = 3 * s2 - 4 * s + 1, d01 = -6 * s2 + 6 * s, d11 = 3 * s2 - 2 * s;
    return (d00 / dt) * p0 + d10 * v0 + (d01 / dt) * p1 + d11 * v1;
}

class Evaluator {
public:
    Evaluator(const OdeParams& p, std::vector<int> degrees)
        : params_(p), degrees_(std::move(degrees)), energy_(p.grid, p.bc) {}

    OdeRhs operator()(double t, const std::vector<Vec2>& pos) {
        ++count_;
        VortexConfiguration c{pos, degrees_, t};
        bool reuse = params_.delta_cache > 0.0 && cached_.size() == pos.size();
        for (std::size_t k = 0; reuse && k < pos.size(); ++k)
            reuse = distance(pos[k], cached_at_[k]) <= params_.delta_cache;
        if (!reuse) {
            cached_ = energy_.gradient(c, params_.grad_options);
            cached_at_ = pos;
        }
        return assemble(c, params_, cached_);
    }

    [[nodiscard]] long count() const { return count_; }

private:
    const OdeParams& params_;
    std::vector<int> degrees_;
    RenormalizedEnergy energy_;
    std::vector<Vec2> cached_, cached_at_;
    long count_ = 0;
};

std::string describe(double t, const std::vector<Vec2>& p) {
    std::ostringstream os;
    os << "t = " << t << ", positions";
    for (const Vec2& x : p) os << " (" << x.x << ", " << x.y << ")";
    return os.str();
}

}  // namespace

OdeRhs ode_rhs(const VortexConfiguration& config, const OdeParams& params, RenormalizedEnergy& energy) {
    const std::vector<Vec2> grad = config.empty() ? std::vector<Vec2>{} : energy.gradient(config, params.grad_options);
    return assemble(config, params, grad);
}

OdeRhs ode_rhs(const VortexConfiguration& config, const OdeParams& params) {
    RenormalizedEnergy energy(params.grid, params.bc);
    return ode_rhs(config, params, energy);
}

std::vector<Vec2> OdeTrajectory::positions_at(double t) const {
    if (samples.empty()) return {};
    if (t <= samples.front().t) return samples.front().positions;
    if (t >= samples.back().t) return samples.back().positions;
    const auto it = std::upper_bound(samples.begin(), samples.end(), t,
                                     [](double v, const OdeSample& s) { return v < s.t; });
    const OdeSample& a = *(it - 1);
    const OdeSample& b = *it;
    const double dt = b.t - a.t, s = (t - a.t) / dt;
    std::vector<Vec2> out(a.positions.size());
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] = hermite(s, dt, a.positions[k], b.positions[k], a.rhs.velocity[k], b.rhs.velocity[k]);
    return out;
}

std::vector<Vec2> OdeTrajectory::velocities_at(double t) const {
    if (samples.empty()) return {};
    if (t <= samples.front().t) return samples.front().rhs.velocity;
    if (t >= samples.back().t) return samples.back().rhs.velocity;
    const auto it = std::upper_bound(samples.begin(), samples.end(), t,
                                     [](double v, const OdeSample& s) { return v < s.t; });
    const OdeSample& a = *(it - 1);
    const OdeSample& b = *it;
    const double dt = b.t - a.t, s = (t - a.t) / dt;
    std::vector<Vec2> out(a.positions.size());
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] = hermite_derivative(s, dt, a.positions[k], b.positions[k], a.rhs.velocity[k], b.rhs.velocity[k]);
    return out;
}

OdeTrajectory integrate(const VortexConfiguration& initial, const OdeParams& params, double T) {
    if (!(params.lambda0 > 0.0)) throw ConfigError("ode.lambda0: must be positive");
    if (!(params.rtol > 0.0) || !(params.atol > 0.0)) throw ConfigError("ode.rtol/ode.atol: must be positive");
    if (!(T >= 0.0)) throw ConfigError("time.T: must be non-negative");
    initial.validate(params.grid);

    OdeTrajectory traj;
    traj.degrees = initial.degrees;
    traj.horizon = T;
    Evaluator eval(params, initial.degrees);
    const std::size_t n = initial.size();

    double t = initial.time;
    std::vector<Vec2> pos = initial.positions;
    OdeRhs f0 = eval(t, pos);
    traj.samples.push_back({t, pos, f0});

    OdeStatus which = OdeStatus::Running;
    if (n > 0 && event_margin(pos, params.grid, params.collision_radius, &which) <= 0.0) {
        traj.status = which;
        traj.t_star = t;
        traj.rhs_evaluations = eval.count();
        return traj;
    }
    if (n == 0 || T == 0.0) {
        if (T > 0.0) traj.samples.push_back({initial.time + T, pos, f0});
        traj.rhs_evaluations = eval.count();
        return traj;
    }

    // Dormand-Prince 5(4) tableau.
    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                     a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                     e6 = 22.0 / 525, e7 = -1.0 / 40;

    const double t_end = initial.time + T;
    double h = std::min({params.initial_step, params.max_step, T});
    auto combine = [&](const std::vector<Vec2>& base, double dt, std::initializer_list<std::pair<double, const OdeRhs*>> terms) {
        std::vector<Vec2> out = base;
        for (std::size_t k = 0; k < n; ++k)
            for (const auto& [w, f] : terms) out[k] += (dt * w) * f->velocity[k];
        return out;
    };

    while (t < t_end) {
        h = std::min(h, t_end - t);
        if (h < params.min_step * std::max(1.0, std::abs(t)))
            throw StepUnderflow("ode: step size underflow at " + describe(t, pos));
        OdeRhs k2, k3, k4, k5, k6, k7;
        std::vector<Vec2> y5;
        bool ok = true;
        try {
            k2 = eval(t + c2 * h, combine(pos, h, {{a21, &f0}}));
            k3 = eval(t + c3 * h, combine(pos, h, {{a31, &f0}, {a32, &k2}}));
            k4 = eval(t + c4 * h, combine(pos, h, {{a41, &f0}, {a42, &k2}, {a43, &k3}}));
            k5 = eval(t + c5 * h, combine(pos, h, {{a51, &f0}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
            k6 = eval(t + h, combine(pos, h, {{a61, &f0}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
            y5 = combine(pos, h, {{b1, &f0}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
            k7 = eval(t + h, y5);
        } catch (const ConfigError&) {
            // Stage outside the admissible set.
            ok = false;
        }
        if (!ok) {
            ++traj.rejected_steps;
            h *= 0.25;
            double vmax = 0.0;
            for (const Vec2& v : f0.velocity) vmax = std::max(vmax, norm(v));
            if (h * vmax < 1e-10) {
                // Pinned against the edge of the admissible set: the event
                // surface is reached at t to within the step.
                event_margin(pos, params.grid, params.collision_radius, &which);
                traj.status = which;
                traj.t_star = t;
                break;
            }
            continue;
        }
        double err = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const Vec2 e = h * (e1 * f0.velocity[k] + e3 * k3.velocity[k] + e4 * k4.velocity[k] +
                                e5 * k5.velocity[k] + e6 * k6.velocity[k] + e7 * k7.velocity[k]);
            const double sx = params.atol + params.rtol * std::max(std::abs(pos[k].x), std::abs(y5[k].x));
            const double sy = params.atol + params.rtol * std::max(std::abs(pos[k].y), std::abs(y5[k].y));
            err = std::max({err, std::abs(e.x) / sx, std::abs(e.y) / sy});
        }
        const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
        if (err > 1.0) {
            ++traj.rejected_steps;
            h *= std::max(factor, 0.2);
            continue;
        }
        ++traj.accepted_steps;

        const double margin = event_margin(y5, params.grid, params.collision_radius, &which);
        if (margin <= 0.0) {
            // Bisection on the Hermite interpolant of the accepted step.
            double lo = 0.0, hi = 1.0;
            auto at = [&](double s) {
                std::vector<Vec2> p(n);
                for (std::size_t k = 0; k < n; ++k)
                    p[k] = hermite(s, h, pos[k], y5[k], f0.velocity[k], k7.velocity[k]);
                return p;
            };
            for (int it = 0; it < 80 && (hi - lo) * h > 1e-15 * std::max(1.0, t); ++it) {
                const double mid = 0.5 * (lo + hi);
                if (event_margin(at(mid), params.grid, params.collision_radius, nullptr) > 0.0)
                    lo = mid;
                else
                    hi = mid;
            }
            const double ts = t + hi * h;
            const std::vector<Vec2> ps = at(hi);
            event_margin(ps, params.grid, params.collision_radius, &which);
            traj.status = which;
            traj.t_star = ts;
            try {
                traj.samples.push_back({ts, ps, eval(ts, ps)});
            } catch (const ConfigError&) {
            }
            break;
        }
        t += h;
        pos = std::move(y5);
        f0 = std::move(k7);
        traj.samples.push_back({t, pos, f0});
        h = std::min(h * factor, params.max_step);
    }
    traj.rhs_evaluations = eval.count();
    return traj;
}

}  // namespace glv
