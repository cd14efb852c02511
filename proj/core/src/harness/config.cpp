#include "glv/harness/config.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "glv/errors.hpp"

namespace glv::harness {

std::string to_string(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::Simulate: return "simulate";
        case ExperimentKind::Ode: return "ode";
        case ExperimentKind::Compare: return "compare";
        case ExperimentKind::Sweep: return "sweep";
        case ExperimentKind::Diagnose: return "diagnose";
    }
    return "unknown";
}

ExperimentKind parse_kind(const std::string& name) {
    for (auto k : {ExperimentKind::Simulate, ExperimentKind::Ode, ExperimentKind::Compare, ExperimentKind::Sweep,
                   ExperimentKind::Diagnose})
        if (to_string(k) == name) return k;
    throw ConfigError("kind: unknown experiment kind '" + name + "'");
}

namespace {

void check_keys(const YAML::Node& node, const std::string& where, const std::set<std::string>& allowed) {
    if (node.IsNull()) return;
    if (!node.IsMap()) throw ConfigError(where + ": expected a mapping");
    for (const auto& kv : node) {
        const std::string key = kv.first.as<std::string>();
        if (!allowed.count(key)) throw ConfigError((where.empty() ? key : where + "." + key) + ": unknown key");
    }
}

template <class T>
T get(const YAML::Node& node, const std::string& key, const std::string& where, T fallback) {
    const YAML::Node v = node[key];
    if (!v) return fallback;
    try {
        return v.as<T>();
    } catch (const YAML::Exception&) {
        throw ConfigError((where.empty() ? key : where + "." + key) + ": invalid value");
    }
}

Vec2 get_vec(const YAML::Node& node, const std::string& key, const std::string& where, Vec2 fallback) {
    const YAML::Node v = node[key];
    if (!v) return fallback;
    const std::string name = where.empty() ? key : where + "." + key;
    if (!v.IsSequence() || v.size() != 2) throw ConfigError(name + ": expected [x, y]");
    try {
        return {v[0].as<double>(), v[1].as<double>()};
    } catch (const YAML::Exception&) {
        throw ConfigError(name + ": invalid value");
    }
}

VortexConfiguration parse_vortices(const YAML::Node& seq, const std::string& where) {
    VortexConfiguration c;
    if (!seq) return c;
    if (!seq.IsSequence()) throw ConfigError(where + ": expected a list of {x, y, d}");
    for (std::size_t k = 0; k < seq.size(); ++k) {
        const std::string w = where + "[" + std::to_string(k) + "]";
        check_keys(seq[k], w, {"x", "y", "d"});
        if (!seq[k]["x"] || !seq[k]["y"]) throw ConfigError(w + ": x and y are required");
        c.positions.push_back({get<double>(seq[k], "x", w, 0.0), get<double>(seq[k], "y", w, 0.0)});
        c.degrees.push_back(get<int>(seq[k], "d", w, 1));
    }
    return c;
}

FieldSpec parse_field(const YAML::Node& node, const std::string& where) {
    FieldSpec s;
    if (!node || node.IsNull()) return s;
    check_keys(node, where,
               {"family", "vector", "omega", "rate", "center", "poly_x", "poly_y", "cutoff_margin", "cutoff_width",
                "ramp_time"});
    try {
        s.family = parse_family(get<std::string>(node, "family", where, "zero"));
    } catch (const ConfigError& e) {
        throw ConfigError(where + ".family: " + e.what());
    }
    s.vector = get_vec(node, "vector", where, s.vector);
    s.omega = get<double>(node, "omega", where, s.omega);
    s.rate = get<double>(node, "rate", where, s.rate);
    s.center = get_vec(node, "center", where, s.center);
    s.cutoff_margin = get<double>(node, "cutoff_margin", where, s.cutoff_margin);
    s.cutoff_width = get<double>(node, "cutoff_width", where, s.cutoff_width);
    s.ramp_time = get<double>(node, "ramp_time", where, s.ramp_time);
    for (const char* comp : {"poly_x", "poly_y"}) {
        const YAML::Node p = node[comp];
        if (!p) continue;
        const std::string w = where + "." + comp;
        if (!p.IsSequence()) throw ConfigError(w + ": expected a list of {px, py, coef}");
        auto& out = std::string(comp) == "poly_x" ? s.poly_x : s.poly_y;
        for (std::size_t k = 0; k < p.size(); ++k) {
            const std::string wk = w + "[" + std::to_string(k) + "]";
            check_keys(p[k], wk, {"px", "py", "coef"});
            out.push_back({get<int>(p[k], "px", wk, 0), get<int>(p[k], "py", wk, 0), get<double>(p[k], "coef", wk, 0.0)});
        }
    }
    return s;
}

TimeOperator parse_operator(const std::string& s) {
    try {
        return parse_time_operator(s);
    } catch (const ConfigError&) {
        throw ConfigError("ode.time_operator: unknown value '" + s + "'");
    }
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::Exception& e) {
        throw ConfigError(std::string("config: YAML parse error: ") + e.what());
    }
    if (!root || root.IsNull()) throw ConfigError("config: empty document");
    check_keys(root, "",
               {"kind", "domain", "grid", "epsilon", "lambda0", "time", "boundary", "fields", "initial", "tracking",
                "ode", "compare", "output", "sweep"});
    RunConfig c;
    c.source = text;
    c.kind = parse_kind(get<std::string>(root, "kind", "", "simulate"));

    if (const auto d = root["domain"]) {
        check_keys(d, "domain", {"origin", "extent"});
        c.origin = get_vec(d, "origin", "domain", c.origin);
        c.extent = get_vec(d, "extent", "domain", c.extent);
    }
    if (const auto g = root["grid"]) {
        check_keys(g, "grid", {"n1", "n2", "h_over_eps"});
        c.n1 = get<int>(g, "n1", "grid", 0);
        c.n2 = get<int>(g, "n2", "grid", c.n1);
        c.h_over_eps = get<double>(g, "h_over_eps", "grid", 0.0);
    }
    if (!root["epsilon"]) throw ConfigError("epsilon: required");
    c.eps = get<double>(root, "epsilon", "", c.eps);
    c.lambda0 = get<double>(root, "lambda0", "", c.lambda0);

    if (const auto t = root["time"]) {
        check_keys(t, "time", {"T", "dt", "frame_interval"});
        c.T = get<double>(t, "T", "time", 0.0);
        if (t["dt"] && t["dt"].IsScalar() && t["dt"].Scalar() == "auto")
            c.dt = 0.0;
        else
            c.dt = get<double>(t, "dt", "time", 0.0);
        c.frame_interval = get<double>(t, "frame_interval", "time", c.frame_interval);
    } else {
        throw ConfigError("time: required");
    }

    if (const auto b = root["boundary"]) {
        check_keys(b, "boundary", {"kind", "sources", "phase"});
        const std::string kind = get<std::string>(b, "kind", "boundary", "neumann");
        if (kind == "neumann") {
            if (b["sources"]) throw ConfigError("boundary.sources: only valid for dirichlet");
            c.bc = BoundaryCondition::neumann();
        } else if (kind == "dirichlet") {
            c.bc = BoundaryCondition::dirichlet(parse_vortices(b["sources"], "boundary.sources"),
                                                get<double>(b, "phase", "boundary", 0.0));
        } else {
            throw ConfigError("boundary.kind: unknown value '" + kind + "'");
        }
    }
    if (const auto f = root["fields"]) {
        check_keys(f, "fields", {"F", "G"});
        c.F = parse_field(f["F"], "fields.F");
        c.G = parse_field(f["G"], "fields.G");
    }
    if (const auto i = root["initial"]) {
        check_keys(i, "initial", {"vortices"});
        c.initial = parse_vortices(i["vortices"], "initial.vortices");
    }
    if (const auto t = root["tracking"]) {
        check_keys(t, "tracking",
                   {"amplitude_threshold", "collar", "centroid_radius_eps", "v_max", "max_failures", "excess_threshold"});
        c.detection.amplitude_threshold = get<double>(t, "amplitude_threshold", "tracking", c.detection.amplitude_threshold);
        c.detection.collar = get<int>(t, "collar", "tracking", c.detection.collar);
        c.detection.centroid_radius_eps = get<double>(t, "centroid_radius_eps", "tracking", c.detection.centroid_radius_eps);
        c.v_max = get<double>(t, "v_max", "tracking", c.v_max);
        c.max_tracking_failures = get<int>(t, "max_failures", "tracking", c.max_tracking_failures);
        c.excess_threshold = get<double>(t, "excess_threshold", "tracking", c.excess_threshold);
    }
    if (const auto o = root["ode"]) {
        check_keys(o, "ode", {"rtol", "atol", "time_operator", "grid"});
        c.rtol = get<double>(o, "rtol", "ode", c.rtol);
        c.atol = get<double>(o, "atol", "ode", c.atol);
        c.time_operator = parse_operator(get<std::string>(o, "time_operator", "ode", to_string(c.time_operator)));
        c.ode_grid = get<int>(o, "grid", "ode", 0);
    }
    if (const auto o = root["compare"]) {
        check_keys(o, "compare", {"median_filter"});
        c.median_filter = get<bool>(o, "median_filter", "compare", false);
    }
    if (const auto o = root["output"]) {
        check_keys(o, "output", {"dir", "snapshot_every", "residuals", "diagnostics", "energy_guard"});
        c.output_dir = get<std::string>(o, "dir", "output", "");
        c.snapshot_every = get<int>(o, "snapshot_every", "output", 0);
        c.residuals = get<bool>(o, "residuals", "output", c.residuals);
        c.diagnostics = get<bool>(o, "diagnostics", "output", c.diagnostics);
        c.energy_guard = get<double>(o, "energy_guard", "output", c.energy_guard);
    }
    if (const auto s = root["sweep"]) {
        check_keys(s, "sweep", {"epsilons", "member"});
        if (const auto e = s["epsilons"]) {
            if (!e.IsSequence()) throw ConfigError("sweep.epsilons: expected a list");
            for (const auto& v : e) {
                try {
                    c.sweep_epsilons.push_back(v.as<double>());
                } catch (const YAML::Exception&) {
                    throw ConfigError("sweep.epsilons: invalid value");
                }
            }
        }
        c.sweep_member = parse_kind(get<std::string>(s, "member", "sweep", "compare"));
    }
    validate(c);
    return c;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("--config: cannot open " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    if (path.extension() == ".json") {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(ss.str());
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError("--config: invalid JSON: " + std::string(e.what()));
        }
        if (!j.contains("config") || !j["config"].is_string())
            throw ConfigError("config: manifest has no embedded configuration");
        return parse_config(j["config"].get<std::string>());
    }
    return parse_config(ss.str());
}

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string vec(Vec2 v) { return "[" + num(v.x) + ", " + num(v.y) + "]"; }

void emit_vortices(std::ostringstream& o, const VortexConfiguration& c, const std::string& indent) {
    for (std::size_t k = 0; k < c.size(); ++k)
        o << indent << "- {x: " << num(c.positions[k].x) << ", y: " << num(c.positions[k].y)
          << ", d: " << c.degrees[k] << "}\n";
}

void emit_field(std::ostringstream& o, const char* name, const FieldSpec& s) {
    o << "  " << name << ":\n";
    o << "    family: " << to_string(s.family) << "\n";
    o << "    vector: " << vec(s.vector) << "\n";
    o << "    omega: " << num(s.omega) << "\n";
    o << "    rate: " << num(s.rate) << "\n";
    o << "    center: " << vec(s.center) << "\n";
    o << "    cutoff_margin: " << num(s.cutoff_margin) << "\n";
    o << "    cutoff_width: " << num(s.cutoff_width) << "\n";
    o << "    ramp_time: " << num(s.ramp_time) << "\n";
    for (const auto* p : {&s.poly_x, &s.poly_y}) {
        if (p->empty()) continue;
        o << "    " << (p == &s.poly_x ? "poly_x" : "poly_y") << ":\n";
        for (const Monomial& m : *p)
            o << "      - {px: " << m.px << ", py: " << m.py << ", coef: " << num(m.coef) << "}\n";
    }
}

}  // namespace

std::string to_yaml(const RunConfig& c) {
    std::ostringstream o;
    o << "kind: " << to_string(c.kind) << "\n";
    o << "domain:\n  origin: " << vec(c.origin) << "\n  extent: " << vec(c.extent) << "\n";
    o << "grid:\n";
    if (c.h_over_eps > 0.0)
        o << "  h_over_eps: " << num(c.h_over_eps) << "\n";
    else
        o << "  n1: " << c.n1 << "\n  n2: " << c.n2 << "\n";
    o << "epsilon: " << num(c.eps) << "\n";
    o << "lambda0: " << num(c.lambda0) << "\n";
    o << "time:\n  T: " << num(c.T) << "\n  dt: " << (c.dt > 0.0 ? num(c.dt) : std::string("auto"))
      << "\n  frame_interval: " << num(c.frame_interval) << "\n";
    o << "boundary:\n  kind: " << (c.bc.kind == BoundaryKind::Dirichlet ? "dirichlet" : "neumann") << "\n";
    if (c.bc.kind == BoundaryKind::Dirichlet) {
        o << "  phase: " << num(c.bc.g_phase) << "\n  sources:\n";
        emit_vortices(o, c.bc.g_sources, "    ");
    }
    o << "fields:\n";
    emit_field(o, "F", c.F);
    emit_field(o, "G", c.G);
    o << "initial:\n  vortices:" << (c.initial.empty() ? " []\n" : "\n");
    emit_vortices(o, c.initial, "    ");
    o << "tracking:\n  amplitude_threshold: " << num(c.detection.amplitude_threshold)
      << "\n  collar: " << c.detection.collar << "\n  centroid_radius_eps: " << num(c.detection.centroid_radius_eps)
      << "\n  v_max: " << num(c.v_max) << "\n  max_failures: " << c.max_tracking_failures
      << "\n  excess_threshold: " << num(c.excess_threshold) << "\n";
    o << "ode:\n  rtol: " << num(c.rtol) << "\n  atol: " << num(c.atol) << "\n  time_operator: "
      << to_string(c.time_operator) << "\n  grid: " << c.ode_grid << "\n";
    o << "compare:\n  median_filter: " << (c.median_filter ? "true" : "false") << "\n";
    o << "output:\n  snapshot_every: " << c.snapshot_every << "\n  residuals: " << (c.residuals ? "true" : "false")
      << "\n  diagnostics: " << (c.diagnostics ? "true" : "false") << "\n  energy_guard: " << num(c.energy_guard)
      << "\n";
    if (!c.output_dir.empty()) o << "  dir: \"" << c.output_dir.string() << "\"\n";
    if (!c.sweep_epsilons.empty()) {
        o << "sweep:\n  member: " << to_string(c.sweep_member) << "\n  epsilons: [";
        for (std::size_t k = 0; k < c.sweep_epsilons.size(); ++k) o << (k ? ", " : "") << num(c.sweep_epsilons[k]);
        o << "]\n";
    }
    return o.str();
}

Grid RunConfig::grid() const {
    int m1 = n1, m2 = n2;
    if (h_over_eps > 0.0) {
        const double h = h_over_eps * eps;
        m1 = static_cast<int>(std::ceil(extent.x / h - 1e-9)) + 1;
        const double hh = extent.x / (m1 - 1);
        m2 = static_cast<int>(std::lround(extent.y / hh)) + 1;
    }
    if (m1 <= 0 || m2 <= 0) throw ConfigError("grid: set n1/n2 or h_over_eps");
    try {
        return Grid(origin, extent, m1, m2);
    } catch (const ConfigError& e) {
        throw ConfigError(std::string("grid: ") + e.what());
    }
}

RunConfig RunConfig::with_eps(double e) const {
    RunConfig c = *this;
    c.eps = e;
    c.sweep_epsilons.clear();
    c.kind = sweep_member;
    c.source = to_yaml(c);
    return c;
}

void validate(const RunConfig& c) {
    if (!(c.eps > 0.0 && c.eps < 1.0)) throw ConfigError("epsilon: must lie in (0, 1)");
    if (!(c.lambda0 > 0.0)) throw ConfigError("lambda0: must be positive");
    if (!(c.T >= 0.0) || !std::isfinite(c.T)) throw ConfigError("time.T: must be non-negative");
    if (c.dt < 0.0) throw ConfigError("time.dt: must be positive or auto");
    if (!(c.frame_interval > 0.0)) throw ConfigError("time.frame_interval: must be positive");
    if (!(c.extent.x > 0.0 && c.extent.y > 0.0)) throw ConfigError("domain.extent: must be positive");
    if (!(c.rtol > 0.0 && c.atol > 0.0)) throw ConfigError("ode.rtol/atol: must be positive");
    if (c.kind == ExperimentKind::Sweep) {
        if (c.sweep_epsilons.empty()) throw ConfigError("sweep.epsilons: required for kind sweep");
        if (c.sweep_member == ExperimentKind::Sweep) throw ConfigError("sweep.member: cannot be sweep");
        for (double e : c.sweep_epsilons)
            if (!(e > 0.0 && e < 1.0)) throw ConfigError("sweep.epsilons: values must lie in (0, 1)");
        if (!(c.h_over_eps > 0.0)) throw ConfigError("grid.h_over_eps: required for kind sweep");
    }
    const Grid g = c.grid();
    try {
        c.initial.validate(g);
    } catch (const ConfigError& e) {
        throw ConfigError(std::string("initial.vortices: ") + e.what());
    }
    if (c.kind == ExperimentKind::Ode || c.kind == ExperimentKind::Compare || c.kind == ExperimentKind::Sweep)
        if (c.initial.empty()) throw ConfigError("initial.vortices: the ODE needs at least one vortex");
    const bool pde = c.kind == ExperimentKind::Sweep ? c.sweep_member != ExperimentKind::Ode : c.kind != ExperimentKind::Ode;
    if (pde && !c.initial.empty()) {
        std::vector<double> epsilons{c.eps};
        if (c.kind == ExperimentKind::Sweep) epsilons = c.sweep_epsilons;
        for (double e : epsilons) {
            const double h = c.with_eps(e).grid().h();
            const double rho = c.initial.rho(c.with_eps(e).grid());
            if (!(rho > 8.0 * e && rho > 8.0 * h))
                throw ConfigError("initial.vortices: rho = " + std::to_string(rho) + " must exceed 8*epsilon = " +
                                  std::to_string(8.0 * e) + " and 8h = " + std::to_string(8.0 * h));
        }
    }
    if (c.bc.kind == BoundaryKind::Dirichlet) {
        const int w = c.bc.winding(g);
        if (w != c.initial.total_degree())
            throw ConfigError("boundary.sources: degree of g is " + std::to_string(w) +
                              " but the vortex degrees sum to " + std::to_string(c.initial.total_degree()));
    }
    const ExternalFields fields(c.F, c.G, c.origin, c.origin + c.extent);
    require_admissible(fields, g, c.bc.kind, c.T);
}

SimulationSetup make_setup(const RunConfig& c) {
    SimulationSetup s;
    s.grid = c.grid();
    s.scaling = EpsilonScaling::make(c.eps, c.lambda0);
    s.bc = c.bc;
    s.fields = ExternalFields(c.F, c.G, c.origin, c.origin + c.extent);
    s.initial = c.initial;
    s.T = c.T;
    s.dt = c.dt;
    s.frame_interval = c.frame_interval;
    s.detection = c.detection;
    s.v_max = c.v_max;
    s.max_tracking_failures = c.max_tracking_failures;
    s.excess_threshold = c.excess_threshold;
    s.residuals = c.residuals;
    s.diagnostics = c.diagnostics;
    s.stepper.energy_guard = c.energy_guard;
    s.snapshot_every = c.snapshot_every;
    return s;
}

OdeParams make_ode_params(const RunConfig& c) {
    OdeParams p;
    const Grid pde = c.grid();
    p.lambda0 = c.lambda0;
    p.fields = ExternalFields(c.F, c.G, c.origin, c.origin + c.extent);
    p.bc = c.bc;
    p.grid = c.ode_grid > 0 ? Grid(c.origin, c.extent, c.ode_grid,
                                   static_cast<int>(std::lround(c.extent.y / (c.extent.x / (c.ode_grid - 1)))) + 1)
                            : pde;
    p.time_operator = c.time_operator;
    p.rtol = c.rtol;
    p.atol = c.atol;
    p.collision_radius = collision_radius(c.eps, pde.h());
    return p;
}

std::string config_hash(const std::string& text) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace glv::harness
