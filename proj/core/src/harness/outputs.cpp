#include "glv/harness/outputs.hpp"

#include <cmath>
#include <cstdio>

#include <nlohmann/json.hpp>

#include "glv/errors.hpp"

namespace glv::harness {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path& path) : out_(path, std::ios::binary) {
    if (!out_) throw Error("cannot write " + path.string());
}

void CsvWriter::separator() {
    if (!first_) out_ << ',';
    first_ = false;
}

CsvWriter& CsvWriter::operator<<(const std::string& field) {
    separator();
    if (field.find_first_of(",\"\r\n") == std::string::npos) {
        out_ << field;
    } else {
        out_ << '"';
        for (char c : field) {
            if (c == '"') out_ << '"';
            out_ << c;
        }
        out_ << '"';
    }
    return *this;
}

CsvWriter& CsvWriter::operator<<(double value) {
    separator();
    out_ << format_number(value);
    return *this;
}

CsvWriter& CsvWriter::operator<<(int value) {
    separator();
    out_ << value;
    return *this;
}

CsvWriter& CsvWriter::operator<<(long value) {
    separator();
    out_ << value;
    return *this;
}

CsvWriter& CsvWriter::operator<<(std::size_t value) {
    separator();
    out_ << value;
    return *this;
}

void CsvWriter::end_row() {
    out_ << "\r\n";
    first_ = true;
}

void write_tracks(const std::filesystem::path& path, const TrajectoryRecord& record) {
    CsvWriter w(path);
    w << "t" << "k" << "d_k" << "x" << "y" << "cluster_size" << "min_abs_u";
    w.end_row();
    for (const Frame& f : record.frames) {
        for (std::size_t k = 0; k < f.vortices.size(); ++k) {
            w << f.t << k << f.vortices.degrees[k] << f.vortices.positions[k].x << f.vortices.positions[k].y
              << (k < f.cluster_size.size() ? f.cluster_size[k] : 0)
              << (k < f.min_modulus.size() ? f.min_modulus[k] : std::nan(""));
            w.end_row();
        }
    }
}

void write_timeseries(const std::filesystem::path& path, const TrajectoryRecord& record) {
    const std::size_t n = record.degrees.size();
    CsvWriter w(path);
    w << "t" << "step" << "detected";
    for (std::size_t k = 0; k < n; ++k) {
        const std::string s = std::to_string(k);
        w << "x_" + s << "y_" + s << "d_" + s;
    }
    w << "energy" << "W" << "excess" << "kinetic" << "dissipated" << "jacobian_mass" << "boundary_winding"
      << "max_abs_u" << "neumann_flux" << "residual_energy" << "residual_jacobian" << "residual_mass";
    w.end_row();
    const double nan = std::nan("");
    for (const Frame& f : record.frames) {
        w << f.t << f.step << (f.detected ? 1 : 0);
        for (std::size_t k = 0; k < n; ++k) {
            if (k < f.vortices.size())
                w << f.vortices.positions[k].x << f.vortices.positions[k].y << f.vortices.degrees[k];
            else
                w << nan << nan << record.degrees[k];
        }
        w << f.excess.energy << f.excess.W << f.excess.excess << f.kinetic << f.dissipated << f.jacobian_mass
          << f.boundary_winding << f.max_modulus << f.neumann_flux;
        if (f.residuals)
            w << f.residuals->energy.total << f.residuals->jacobian.total << f.residuals->mass.total;
        else
            w << nan << nan << nan;
        w.end_row();
    }
}

void write_ode(const std::filesystem::path& path, const OdeTrajectory& traj) {
    const std::size_t n = traj.degrees.size();
    CsvWriter w(path);
    w << "t";
    for (std::size_t k = 0; k < n; ++k) {
        const std::string s = std::to_string(k);
        for (const char* c : {"x_", "y_", "W_x_", "W_y_", "F_x_", "F_y_", "G_x_", "G_y_", "v_x_", "v_y_"})
            w << std::string(c) + s;
    }
    w.end_row();
    for (const OdeSample& s : traj.samples) {
        w << s.t;
        for (std::size_t k = 0; k < n; ++k) {
            w << s.positions[k].x << s.positions[k].y << s.rhs.w_term[k].x << s.rhs.w_term[k].y << s.rhs.f_term[k].x
              << s.rhs.f_term[k].y << s.rhs.g_term[k].x << s.rhs.g_term[k].y << s.rhs.velocity[k].x
              << s.rhs.velocity[k].y;
        }
        w.end_row();
    }
}

void write_comparison(const std::filesystem::path& path, const ComparisonReport& rep) {
    CsvWriter w(path);
    w << "t" << "k" << "xi_x" << "xi_y" << "a_x" << "a_y" << "eta_x" << "eta_y" << "xi_dot_x" << "xi_dot_y"
      << "a_dot_x" << "a_dot_y" << "R_x" << "R_y" << "eta_norm" << "R_norm" << "excess" << "kinetic";
    w.end_row();
    for (const ComparisonSample& s : rep.samples) {
        for (std::size_t k = 0; k < s.xi.size(); ++k) {
            w << s.t << k << s.xi[k].x << s.xi[k].y << s.a[k].x << s.a[k].y << s.eta[k].x << s.eta[k].y
              << s.xi_dot[k].x << s.xi_dot[k].y << s.a_dot[k].x << s.a_dot[k].y << s.R[k].x << s.R[k].y << s.eta_norm
              << s.R_norm << s.excess << s.kinetic;
            w.end_row();
        }
    }
}

void write_diagnostics(const std::filesystem::path& path, const DiagnosticsBundle& b) {
    CsvWriter w(path);
    w << "t" << "vortices" << "energy" << "energy_ratio" << "energy_offset" << "kinetic" << "excess" << "far_energy";
    for (const auto& n : b.div_j_names) w << "div_j_" + n;
    for (const auto& n : b.stress_names) w << "stress_" + n;
    w << "equipartition_max" << "residual_energy" << "residual_jacobian" << "residual_mass";
    w.end_row();
    const double nan = std::nan("");
    for (const DiagnosticRow& r : b.rows) {
        w << r.t << r.vortices << r.energy << r.energy_ratio << r.energy_offset << r.kinetic << r.excess
          << r.far_energy;
        for (std::size_t k = 0; k < b.div_j_names.size(); ++k) w << (k < r.div_j.size() ? r.div_j[k] : nan);
        for (std::size_t k = 0; k < b.stress_names.size(); ++k)
            w << (k < r.stress_defect.size() ? r.stress_defect[k] : nan);
        double eq = r.equipartition.empty() ? nan : 0.0;
        for (double e : r.equipartition) eq = std::max(eq, e);
        w << eq << r.residual_energy << r.residual_jacobian << r.residual_mass;
        w.end_row();
    }
}

void write_sweep(const std::filesystem::path& path, const std::vector<SweepRow>& rows) {
    CsvWriter w(path);
    w << "eps" << "h" << "n1" << "dt" << "pde_status" << "t_star_pde" << "ode_status" << "t_star_ode" << "sup_eta"
      << "int_eta" << "kinetic" << "point_kinetic" << "mobility_slack" << "excess0" << "excess_max_abs"
      << "equipartition0" << "div_j" << "max_energy_increase" << "error";
    w.end_row();
    for (const SweepRow& r : rows) {
        w << r.eps << r.h << r.n1 << r.dt << r.pde_status << r.t_star_pde << r.ode_status << r.t_star_ode << r.sup_eta
          << r.int_eta << r.kinetic << r.point_kinetic << r.mobility_slack << r.excess0 << r.excess_max_abs
          << r.equipartition0 << r.div_j << r.max_energy_increase << r.error;
        w.end_row();
    }
}

void write_plot(const std::filesystem::path& path, const TrajectoryRecord* pde, const OdeTrajectory* ode,
                const ComparisonReport* cmp) {
    CsvWriter w(path);
    w << "series" << "member" << "t" << "value";
    w.end_row();
    auto row = [&](const std::string& s, const std::string& m, double t, double v) {
        w << s << m << t << v;
        w.end_row();
    };
    if (pde) {
        for (const Frame& f : pde->frames) {
            row("energy", "pde", f.t, f.excess.energy);
            row("excess", "pde", f.t, f.excess.excess);
            row("kinetic", "pde", f.t, f.kinetic);
            for (std::size_t k = 0; k < f.vortices.size(); ++k) {
                row("x", "pde_" + std::to_string(k), f.t, f.vortices.positions[k].x);
                row("y", "pde_" + std::to_string(k), f.t, f.vortices.positions[k].y);
            }
        }
    }
    if (ode) {
        for (const OdeSample& s : ode->samples) {
            for (std::size_t k = 0; k < s.positions.size(); ++k) {
                row("x", "ode_" + std::to_string(k), s.t, s.positions[k].x);
                row("y", "ode_" + std::to_string(k), s.t, s.positions[k].y);
            }
        }
    }
    if (cmp) {
        for (const ComparisonSample& s : cmp->samples) {
            row("eta", "compare", s.t, s.eta_norm);
            row("R", "compare", s.t, s.R_norm);
        }
    }
}

void write_manifest(const std::filesystem::path& dir, const RunConfig& config, const std::vector<std::string>& files) {
    nlohmann::ordered_json j;
    j["program"] = "glvlab";
    j["version"] = GLV_VERSION;
    j["kind"] = to_string(config.kind);
    const std::string text = to_yaml(config);
    j["config_hash"] = config_hash(text);
    j["config"] = text;
    j["seeds"] = nlohmann::json::array();
    j["compiler"] = __VERSION__;
    j["files"] = files;
    std::ofstream out(dir / "manifest.json", std::ios::binary);
    if (!out) throw Error("cannot write " + (dir / "manifest.json").string());
    out << j.dump(2) << "\n";
}

}  // namespace glv::harness
