#include "glv/compare.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "glv/errors.hpp"
#include "glv/test_functions.hpp"
#include "glv/vortex_track.hpp"

namespace glv {

std::vector<Vec2> differentiate(const std::vector<double>& t, const std::vector<Vec2>& x) {
    const std::size_t n = t.size();
    std::vector<Vec2> d(n);
    if (n < 2) return d;
    if (n == 2) {
        d[0] = d[1] = (x[1] - x[0]) / (t[1] - t[0]);
        return d;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double h1 = t[i] - t[i - 1], h2 = t[i + 1] - t[i];
        d[i] = (-h2 / (h1 * (h1 + h2))) * x[i - 1] + ((h2 - h1) / (h1 * h2)) * x[i] + (h1 / (h2 * (h1 + h2))) * x[i + 1];
    }
    {
        const double h1 = t[1] - t[0], h2 = t[2] - t[1];
        d[0] = (-(2 * h1 + h2) / (h1 * (h1 + h2))) * x[0] + ((h1 + h2) / (h1 * h2)) * x[1] - (h1 / (h2 * (h1 + h2))) * x[2];
    }
    {
        const double h1 = t[n - 2] - t[n - 3], h2 = t[n - 1] - t[n - 2];
        d[n - 1] = (h2 / (h1 * (h1 + h2))) * x[n - 3] - ((h1 + h2) / (h1 * h2)) * x[n - 2] +
                   ((h1 + 2 * h2) / (h2 * (h1 + h2))) * x[n - 1];
    }
    return d;
}

namespace {

double median3(double a, double b, double c) { return std::max(std::min(a, b), std::min(std::max(a, b), c)); }

double trapezoid(const std::vector<double>& t, const std::vector<double>& f) {
    double s = 0.0;
    for (std::size_t i = 1; i < t.size(); ++i) s += 0.5 * (t[i] - t[i - 1]) * (f[i] + f[i - 1]);
    return s;
}

double end_time(const TrajectoryRecord& r) {
    return r.status == RunStatus::Completed ? r.final_time() : r.t_star;
}

double end_time(const OdeTrajectory& o) {
    return o.status == OdeStatus::Running ? o.final_time() : o.t_star;
}

}  // namespace

ComparisonReport compare(const TrajectoryRecord& pde, const OdeTrajectory& ode, const OdeParams& params,
                         const CompareOptions& options) {
    if (std::abs(pde.T - ode.horizon) > 1e-9 * std::max(1.0, pde.T))
        throw HorizonMismatch("compare: PDE horizon " + std::to_string(pde.T) + " differs from ODE horizon " +
                              std::to_string(ode.horizon));
    if (pde.frames.empty() || ode.samples.empty()) throw HorizonMismatch("compare: empty record");
    std::vector<int> da = pde.degrees, db = ode.degrees;
    std::sort(da.begin(), da.end());
    std::sort(db.begin(), db.end());
    if (da != db) throw HorizonMismatch("compare: degree lists differ between the PDE and ODE records");
    if (std::abs(pde.lambda0 - params.lambda0) > 1e-12) throw HorizonMismatch("compare: λ₀ differs");

    ComparisonReport rep;
    rep.lambda0 = params.lambda0;
    rep.pde_status = to_string(pde.status);
    rep.ode_status = to_string(ode.status);
    rep.t_star_pde = pde.status == RunStatus::Completed ? 0.0 : pde.t_star;
    rep.t_star_ode = ode.status == OdeStatus::Running ? 0.0 : ode.t_star;
    rep.horizon = std::min(end_time(pde), end_time(ode));
    if (options.horizon_cap > 0.0) rep.horizon = std::min(rep.horizon, options.horizon_cap);

    // Track k of the PDE record ↔ vortex perm[k] of the ODE, fixed at t = 0.
    const Frame& f0 = pde.frames.front();
    VortexConfiguration ode0{ode.samples.front().positions, ode.degrees, 0.0};
    const Assignment perm = match_tracks(f0.vortices, ode0, std::numeric_limits<double>::infinity());

    std::vector<const Frame*> frames;
    for (const Frame& f : pde.frames)
        if (f.detected && f.t <= rep.horizon + 1e-12 && f.vortices.size() == ode.degrees.size()) frames.push_back(&f);
    if (frames.size() < 2) throw HorizonMismatch("compare: fewer than two common samples");

    const std::size_t n = ode.degrees.size(), m = frames.size();
    std::vector<double> t(m);
    std::vector<std::vector<Vec2>> xi(n, std::vector<Vec2>(m));
    for (std::size_t i = 0; i < m; ++i) {
        t[i] = frames[i]->t;
        for (std::size_t k = 0; k < n; ++k) xi[k][i] = frames[i]->vortices.positions[k];
    }
    if (options.median_filter && m >= 3) {
        for (std::size_t k = 0; k < n; ++k) {
            std::vector<Vec2> f = xi[k];
            for (std::size_t i = 1; i + 1 < m; ++i)
                f[i] = {median3(xi[k][i - 1].x, xi[k][i].x, xi[k][i + 1].x),
                        median3(xi[k][i - 1].y, xi[k][i].y, xi[k][i + 1].y)};
            xi[k] = f;
        }
    }
    std::vector<std::vector<Vec2>> xi_dot(n), eta(n);
    for (std::size_t k = 0; k < n; ++k) xi_dot[k] = differentiate(t, xi[k]);

    RenormalizedEnergy energy(params.grid, params.bc);
    const double mob = std::sqrt(params.lambda0 * params.lambda0 + 1.0);
    std::vector<double> eta_norms(m), point_kin(m);
    const auto vbank = vector_test_bank(params.grid.origin(), params.grid.origin() + params.grid.extent());
    std::vector<std::vector<double>> point_mom(vbank.size(), std::vector<double>(m)),
        pde_mom(vbank.size(), std::vector<double>(m));
    std::vector<double> kin(m);

    for (std::size_t i = 0; i < m; ++i) {
        ComparisonSample s;
        s.t = t[i];
        const std::vector<Vec2> a_ode = ode.positions_at(t[i]);
        std::vector<Vec2> a(n);
        std::vector<int> deg(n);
        for (std::size_t k = 0; k < n; ++k) {
            a[k] = a_ode[perm.index[k]];
            deg[k] = ode.degrees[perm.index[k]];
        }
        VortexConfiguration ca{a, deg, t[i]};
        const OdeRhs rhs = ode_rhs(ca, params, energy);
        double e2 = 0.0, r2 = 0.0, pk = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            s.xi.push_back(xi[k][i]);
            s.a.push_back(a[k]);
            s.eta.push_back(xi[k][i] - a[k]);
            s.xi_dot.push_back(xi_dot[k][i]);
            const Vec2 adot = solve_mobility(params.lambda0, deg[k], rhs.total(k));
            s.a_dot.push_back(adot);
            const Vec2 R = apply_mobility(params.lambda0, deg[k], xi_dot[k][i]) - rhs.total(k);
            s.R.push_back(R);
            e2 += dot(s.eta.back(), s.eta.back());
            r2 += dot(R, R);
            pk += dot(xi_dot[k][i], xi_dot[k][i]);
            rep.identity_error = std::max(rep.identity_error,
                                          std::abs(norm(R) - mob * norm(xi_dot[k][i] - adot)) / std::max(1.0, norm(R)));
            eta[k].push_back(s.eta.back());
        }
        s.eta_norm = std::sqrt(e2);
        s.R_norm = std::sqrt(r2);
        s.excess = frames[i]->excess.excess;
        s.kinetic = frames[i]->kinetic;
        eta_norms[i] = s.eta_norm;
        point_kin[i] = std::numbers::pi * pk;
        kin[i] = frames[i]->kinetic;
        for (std::size_t w = 0; w < vbank.size(); ++w) {
            double v = 0.0;
            for (std::size_t k = 0; k < n; ++k) v -= std::numbers::pi * dot(xi_dot[k][i], vbank[w].fn(xi[k][i], t[i]));
            point_mom[w][i] = v;
            pde_mom[w][i] = frames[i]->diagnostics && w < frames[i]->diagnostics->momentum.size()
                                ? frames[i]->diagnostics->momentum[w]
                                : 0.0;
        }
        rep.sup_eta = std::max(rep.sup_eta, s.eta_norm);
        rep.excess_max_abs = std::max(rep.excess_max_abs, std::abs(s.excess));
        rep.samples.push_back(std::move(s));
    }
    for (std::size_t k = 0; k < n; ++k) rep.eta0 = std::max(rep.eta0, norm(rep.samples.front().eta[k]));

    // η̇ from differences of η, for the wiring check of |R| = √(λ₀²+1)|η̇|.
    for (std::size_t k = 0; k < n; ++k) {
        const std::vector<Vec2> eta_dot = differentiate(t, eta[k]);
        for (std::size_t i = 0; i < m; ++i) {
            const double r = norm(rep.samples[i].R[k]);
            rep.identity_error_fd = std::max(rep.identity_error_fd, std::abs(r - mob * norm(eta_dot[i])) / std::max(1.0, r));
        }
    }

    rep.int_eta = trapezoid(t, eta_norms);
    rep.kinetic = kin.back() - kin.front();
    rep.point_kinetic = trapezoid(t, point_kin);
    rep.mobility_slack = rep.kinetic - rep.point_kinetic;
    for (std::size_t w = 0; w < vbank.size(); ++w) {
        rep.momentum_names.push_back(vbank[w].name);
        rep.momentum_pde.push_back(trapezoid(t, pde_mom[w]));
        rep.momentum_points.push_back(trapezoid(t, point_mom[w]));
    }
    rep.excess0 = rep.samples.front().excess;
    return rep;
}

}  // namespace glv
