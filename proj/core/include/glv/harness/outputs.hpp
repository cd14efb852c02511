#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "glv/compare.hpp"
#include "glv/diagnose.hpp"
#include "glv/harness/config.hpp"
#include "glv/ode_law.hpp"
#include "glv/simulate.hpp"

namespace glv::harness {

/// One line of the sweep summary; NaN where the member kind does not
/// produce the quantity.
struct SweepRow {
    double eps = 0.0;
    double h = 0.0;
    int n1 = 0;
    double dt = 0.0;
    std::string pde_status;
    double t_star_pde = 0.0;
    std::string ode_status;
    double t_star_ode = 0.0;
    double sup_eta = 0.0;
    double int_eta = 0.0;
    double kinetic = 0.0;
    double point_kinetic = 0.0;
    double mobility_slack = 0.0;
    double excess0 = 0.0;
    double excess_max_abs = 0.0;
    double equipartition0 = 0.0;
    double div_j = 0.0;
    double max_energy_increase = 0.0;
    std::string error;
};

/// Minimal RFC 4180 writer: fields containing separators, quotes or line
/// breaks are quoted; numbers use %.17g so rows round-trip exactly.
class CsvWriter {
public:
    explicit CsvWriter(const std::filesystem::path& path);
    CsvWriter& operator<<(const std::string& field);
    CsvWriter& operator<<(const char* field) { return *this << std::string(field); }
    CsvWriter& operator<<(double value);
    CsvWriter& operator<<(int value);
    CsvWriter& operator<<(long value);
    CsvWriter& operator<<(std::size_t value);
    void end_row();

private:
    void separator();
    std::ofstream out_;
    bool first_ = true;
};

std::string format_number(double v);

/// t, k, d_k, x, y, cluster_size, min|u|
void write_tracks(const std::filesystem::path& path, const TrajectoryRecord& record);
/// One row per frame: positions, energy, excess, kinetic integral, residual norms.
void write_timeseries(const std::filesystem::path& path, const TrajectoryRecord& record);
/// t, then per vortex x, y and the W-, F- and G-terms of the right side.
void write_ode(const std::filesystem::path& path, const OdeTrajectory& trajectory);
/// t, k, ξ, a, η, ξ̇, ȧ, R per vortex and time.
void write_comparison(const std::filesystem::path& path, const ComparisonReport& report);
void write_diagnostics(const std::filesystem::path& path, const DiagnosticsBundle& bundle);
void write_sweep(const std::filesystem::path& path, const std::vector<SweepRow>& rows);

/// Long-format series, member, t, value for plotting.
void write_plot(const std::filesystem::path& path, const TrajectoryRecord* pde, const OdeTrajectory* ode,
                const ComparisonReport* comparison);

void write_manifest(const std::filesystem::path& dir, const RunConfig& config, const std::vector<std::string>& files);

}  // namespace glv::harness
