#include <cstdio>
#include <exception>
#include <filesystem>
#include <string>

#include <CLI11.hpp>

#include "glv/errors.hpp"
#include "glv/harness/experiment.hpp"

namespace {

struct Args {
    std::string config;
    std::string out;
    int workers = 1;
    bool quiet = false;
};

int run(glv::harness::ExperimentKind kind, const Args& args) {
    using namespace glv::harness;
    RunConfig config = load_config(args.config);
    if (config.kind != kind) {
        if (kind == ExperimentKind::Sweep && config.sweep_epsilons.empty())
            throw glv::ConfigError("sweep.epsilons: required for the sweep subcommand");
        if (kind == ExperimentKind::Sweep && config.kind != ExperimentKind::Sweep) config.sweep_member = config.kind;
        config.kind = kind;
        validate(config);
    }
    std::filesystem::path out = args.out;
    if (out.empty()) out = config.output_dir;
    if (out.empty()) throw glv::ConfigError("output.dir: no output directory (use --out)");
    const ExperimentResult r = run_experiment(config, out, {args.workers, args.quiet});
    if (!args.quiet) {
        if (r.pde)
            std::fprintf(stderr, "pde: %s at t=%.6g\n", glv::to_string(r.pde->status).c_str(),
                         r.pde->status == glv::RunStatus::Completed ? r.pde->final_time() : r.pde->t_star);
        if (r.ode)
            std::fprintf(stderr, "ode: %s at t=%.6g\n", glv::to_string(r.ode->status).c_str(),
                         r.ode->status == glv::OdeStatus::Running ? r.ode->final_time() : r.ode->t_star);
        if (r.comparison)
            std::fprintf(stderr, "sup|eta| = %.6g, int|eta| = %.6g\n", r.comparison->sup_eta, r.comparison->int_eta);
        std::fprintf(stderr, "wrote %s\n", out.string().c_str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    using glv::harness::ExperimentKind;
    CLI::App app{"Ginzburg-Landau vortex laboratory"};
    app.require_subcommand(1);
    Args args;
    const std::pair<const char*, ExperimentKind> commands[] = {
        {"simulate", ExperimentKind::Simulate}, {"ode", ExperimentKind::Ode},
        {"compare", ExperimentKind::Compare},   {"sweep", ExperimentKind::Sweep},
        {"diagnose", ExperimentKind::Diagnose},
    };
    const char* help[] = {
        "Run the PDE and track the vortices",
        "Integrate the point-vortex law",
        "Run the PDE and the ODE and compare the trajectories",
        "Run a member kind over a list of epsilons",
        "Run the PDE and summarize the energy and concentration diagnostics",
    };
    ExperimentKind chosen = ExperimentKind::Simulate;
    for (std::size_t k = 0; k < std::size(commands); ++k) {
        CLI::App* sub = app.add_subcommand(commands[k].first, help[k]);
        sub->add_option("--config", args.config, "YAML configuration or manifest.json")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", args.out, "Output directory (default: output.dir)");
        sub->add_option("--workers", args.workers, "Concurrent sweep members")->check(CLI::PositiveNumber);
        sub->add_flag("--quiet", args.quiet, "Suppress progress messages");
        sub->callback([&chosen, kind = commands[k].second] { chosen = kind; });
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    try {
        return run(chosen, args);
    } catch (const glv::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return e.exit_code();
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}
