#include "glv/harness/experiment.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

#include <nlohmann/json.hpp>

#include "glv/errors.hpp"

namespace glv::harness {

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

std::mutex log_mutex;

void log(const RunOptions& o, const std::string& msg) {
    if (o.quiet) return;
    std::lock_guard lock(log_mutex);
    std::fprintf(stderr, "%s\n", msg.c_str());
}

double json_number(double v) { return std::isfinite(v) ? v : 0.0; }

ordered_json pde_summary(const TrajectoryRecord& r) {
    ordered_json j;
    j["eps"] = r.eps;
    j["lambda0"] = r.lambda0;
    j["h"] = r.h;
    j["dt"] = r.dt;
    j["T"] = r.T;
    j["steps"] = r.steps;
    j["frames"] = r.frames.size();
    j["status"] = to_string(r.status);
    j["t_star"] = r.t_star;
    j["collision_radius"] = r.collision_radius;
    j["gamma"] = r.gamma;
    j["max_energy_increase"] = r.max_energy_increase;
    j["message"] = r.message;
    if (!r.frames.empty()) {
        j["energy_initial"] = json_number(r.frames.front().excess.energy);
        j["energy_final"] = json_number(r.frames.back().excess.energy);
        j["excess_initial"] = json_number(r.frames.front().excess.excess);
        j["kinetic"] = r.frames.back().kinetic;
    }
    return j;
}

ordered_json ode_summary(const OdeTrajectory& o) {
    ordered_json j;
    j["status"] = to_string(o.status);
    j["t_star"] = o.t_star;
    j["horizon"] = o.horizon;
    j["samples"] = o.samples.size();
    j["accepted_steps"] = o.accepted_steps;
    j["rejected_steps"] = o.rejected_steps;
    j["rhs_evaluations"] = o.rhs_evaluations;
    return j;
}

ordered_json comparison_summary(const ComparisonReport& c) {
    ordered_json j;
    j["horizon"] = c.horizon;
    j["pde_status"] = c.pde_status;
    j["ode_status"] = c.ode_status;
    j["t_star_pde"] = c.t_star_pde;
    j["t_star_ode"] = c.t_star_ode;
    j["sup_eta"] = c.sup_eta;
    j["int_eta"] = c.int_eta;
    j["eta0"] = c.eta0;
    j["identity_error"] = c.identity_error;
    j["identity_error_fd"] = c.identity_error_fd;
    j["kinetic"] = c.kinetic;
    j["point_kinetic"] = c.point_kinetic;
    j["mobility_slack"] = c.mobility_slack;
    ordered_json m = ordered_json::array();
    for (std::size_t k = 0; k < c.momentum_names.size(); ++k)
        m.push_back({{"w", c.momentum_names[k]}, {"pde", c.momentum_pde[k]}, {"points", c.momentum_points[k]}});
    j["momentum"] = m;
    j["excess0"] = json_number(c.excess0);
    j["excess_max_abs"] = json_number(c.excess_max_abs);
    return j;
}

ordered_json diagnostics_summary(const DiagnosticsBundle& b) {
    ordered_json j;
    j["max_energy_ratio"] = b.max_energy_ratio;
    j["energy_offset_variation"] = b.energy_offset_variation;
    j["kinetic_total"] = b.kinetic_total;
    ordered_json d = ordered_json::array();
    for (std::size_t k = 0; k < b.div_j_names.size(); ++k)
        d.push_back({{"phi", b.div_j_names[k]}, {"integrated", b.div_j_integrated[k]}, {"sup", b.div_j_sup[k]}});
    j["div_j"] = d;
    j["max_far_energy"] = b.max_far_energy;
    j["max_equipartition"] = b.max_equipartition;
    j["max_residual_energy"] = b.max_residual_energy;
    j["max_residual_jacobian"] = b.max_residual_jacobian;
    j["max_residual_mass"] = b.max_residual_mass;
    return j;
}

void write_json(const fs::path& path, const ordered_json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << j.dump(2) << "\n";
}

TrajectoryRecord run_pde(const RunConfig& config, const fs::path& out, const RunOptions& options) {
    SimulationSetup setup = make_setup(config);
    if (config.snapshot_every > 0) setup.snapshot_dir = out / "snapshots";
    if (!options.quiet) {
        auto next = std::make_shared<double>(0.1);
        const double eps = config.eps;
        setup.progress = [next, eps, options](double t, double T) {
            if (T > 0.0 && t >= *next * T) {
                log(options, "  eps=" + format_number(eps) + " t=" + format_number(t) + "/" + format_number(T));
                while (*next * T <= t) *next += 0.1;
            }
        };
    }
    return simulate(setup);
}

ExperimentResult run_single(const RunConfig& config, const fs::path& out, const RunOptions& options) {
    ExperimentResult res;
    res.kind = config.kind;
    res.dir = out;
    fs::create_directories(out);
    std::vector<std::string> files;
    ordered_json summary;
    summary["kind"] = to_string(config.kind);

    const bool needs_pde = config.kind != ExperimentKind::Ode;
    const bool needs_ode = config.kind == ExperimentKind::Ode || config.kind == ExperimentKind::Compare;

    if (needs_pde) {
        log(options, "simulate: eps=" + format_number(config.eps) + " grid " + std::to_string(config.grid().n1()) +
                         "x" + std::to_string(config.grid().n2()));
        res.pde = run_pde(config, out, options);
        write_tracks(out / "tracks.csv", *res.pde);
        write_timeseries(out / "timeseries.csv", *res.pde);
        files.insert(files.end(), {"tracks.csv", "timeseries.csv"});
        summary["pde"] = pde_summary(*res.pde);
        if (config.snapshot_every > 0) files.push_back("snapshots/");
    }
    if (needs_ode) {
        log(options, "ode: eps=" + format_number(config.eps));
        const OdeParams params = make_ode_params(config);
        res.ode = integrate(config.initial, params, config.T);
        write_ode(out / "ode.csv", *res.ode);
        files.push_back("ode.csv");
        summary["ode"] = ode_summary(*res.ode);
        if (res.pde) {
            CompareOptions co;
            co.median_filter = config.median_filter;
            res.comparison = compare(*res.pde, *res.ode, params, co);
            write_comparison(out / "comparison.csv", *res.comparison);
            files.push_back("comparison.csv");
            summary["comparison"] = comparison_summary(*res.comparison);
        }
    }
    if (res.pde && (config.kind == ExperimentKind::Diagnose || config.kind == ExperimentKind::Compare)) {
        res.diagnostics = diagnose(*res.pde);
        write_diagnostics(out / "diagnostics.csv", *res.diagnostics);
        files.push_back("diagnostics.csv");
        summary["diagnostics"] = diagnostics_summary(*res.diagnostics);
    }
    write_plot(out / "plot.csv", res.pde ? &*res.pde : nullptr, res.ode ? &*res.ode : nullptr,
               res.comparison ? &*res.comparison : nullptr);
    write_json(out / "summary.json", summary);
    files.insert(files.end(), {"plot.csv", "summary.json"});
    write_manifest(out, config, files);
    return res;
}

SweepRow sweep_row(const RunConfig& member, const ExperimentResult& r) {
    const double nan = std::nan("");
    SweepRow row;
    const Grid g = member.grid();
    row.eps = member.eps;
    row.h = g.h();
    row.n1 = g.n1();
    row.dt = r.pde ? r.pde->dt : nan;
    row.pde_status = r.pde ? to_string(r.pde->status) : "";
    row.t_star_pde = r.pde ? r.pde->t_star : nan;
    row.ode_status = r.ode ? to_string(r.ode->status) : "";
    row.t_star_ode = r.ode ? r.ode->t_star : nan;
    const ComparisonReport* c = r.comparison ? &*r.comparison : nullptr;
    row.sup_eta = c ? c->sup_eta : nan;
    row.int_eta = c ? c->int_eta : nan;
    row.kinetic = c ? c->kinetic : (r.pde && !r.pde->frames.empty() ? r.pde->frames.back().kinetic : nan);
    row.point_kinetic = c ? c->point_kinetic : nan;
    row.mobility_slack = c ? c->mobility_slack : nan;
    row.excess0 = r.pde && !r.pde->frames.empty() ? r.pde->frames.front().excess.excess : nan;
    row.excess_max_abs = nan;
    if (r.pde) {
        row.excess_max_abs = 0.0;
        for (const Frame& f : r.pde->frames)
            if (std::isfinite(f.excess.excess)) row.excess_max_abs = std::max(row.excess_max_abs, std::abs(f.excess.excess));
        row.max_energy_increase = r.pde->max_energy_increase;
    } else {
        row.max_energy_increase = nan;
    }
    row.equipartition0 = nan;
    if (r.pde && !r.pde->frames.empty() && r.pde->frames.front().diagnostics) {
        row.equipartition0 = 0.0;
        for (double e : r.pde->frames.front().diagnostics->equipartition) row.equipartition0 = std::max(row.equipartition0, e);
    }
    row.div_j = nan;
    if (r.diagnostics) {
        row.div_j = 0.0;
        for (double d : r.diagnostics->div_j_integrated) row.div_j += d;
    }
    return row;
}

std::string member_dir(double eps) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "eps_%.4f", eps);
    return buf;
}

ExperimentResult run_sweep(const RunConfig& config, const fs::path& out, const RunOptions& options) {
    ExperimentResult res;
    res.kind = ExperimentKind::Sweep;
    res.dir = out;
    fs::create_directories(out);
    const std::size_t n = config.sweep_epsilons.size();
    std::vector<RunConfig> members;
    for (double e : config.sweep_epsilons) {
        members.push_back(config.with_eps(e));
        validate(members.back());
    }
    res.sweep.resize(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < n; k = next++) {
            const fs::path dir = out / member_dir(members[k].eps);
            try {
                const ExperimentResult r = run_single(members[k], dir, options);
                res.sweep[k] = sweep_row(members[k], r);
                log(options, "member " + dir.filename().string() + " done");
            } catch (const std::exception& e) {
                errors[k] = std::current_exception();
                res.sweep[k].eps = members[k].eps;
                res.sweep[k].error = e.what();
                log(options, "member " + dir.filename().string() + " failed: " + e.what());
            }
        }
    };
    const int workers = std::max(1, std::min<int>(options.workers, static_cast<int>(n)));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    write_sweep(out / "summary.csv", res.sweep);
    std::vector<std::string> files{"summary.csv"};
    for (const RunConfig& m : members) files.push_back(member_dir(m.eps) + "/");
    write_manifest(out, config, files);
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return res;
}

}  // namespace

ExperimentResult run_experiment(const RunConfig& config, const fs::path& out, const RunOptions& options) {
    validate(config);
    if (config.kind == ExperimentKind::Sweep) return run_sweep(config, out, options);
    return run_single(config, out, options);
}

}  // namespace glv::harness
