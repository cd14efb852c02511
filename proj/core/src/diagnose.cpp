#include "glv/diagnose.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "glv/test_functions.hpp"

namespace glv {

DiagnosticsBundle diagnose(const TrajectoryRecord& record) {
    DiagnosticsBundle b;
    b.eps = record.eps;
    const double log_inv = std::log(1.0 / record.eps);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (const auto& s : scalar_test_bank({0, 0}, {1, 1})) b.div_j_names.push_back(s.name);
    for (const auto& v : vector_test_bank({0, 0}, {1, 1})) b.stress_names.push_back(v.name);
    b.div_j_integrated.assign(b.div_j_names.size(), 0.0);
    b.div_j_sup.assign(b.div_j_names.size(), 0.0);

    double off_min = std::numeric_limits<double>::infinity(), off_max = -off_min;
    for (const Frame& f : record.frames) {
        DiagnosticRow r;
        r.t = f.t;
        r.vortices = static_cast<int>(f.vortices.size());
        r.energy = f.excess.energy;
        r.energy_ratio = r.energy / log_inv;
        r.energy_offset = r.energy - std::numbers::pi * r.vortices * log_inv;
        r.kinetic = f.kinetic;
        r.excess = f.excess.excess;
        if (f.diagnostics) {
            r.div_j = f.diagnostics->div_j;
            r.far_energy = f.diagnostics->far_energy;
            r.stress_defect = f.diagnostics->stress_defect;
            r.equipartition = f.diagnostics->equipartition;
        }
        r.residual_energy = f.residuals ? f.residuals->energy.total : nan;
        r.residual_jacobian = f.residuals ? f.residuals->jacobian.total : nan;
        r.residual_mass = f.residuals ? f.residuals->mass.total : nan;

        b.max_energy_ratio = std::max(b.max_energy_ratio, r.energy_ratio);
        off_min = std::min(off_min, r.energy_offset);
        off_max = std::max(off_max, r.energy_offset);
        b.max_far_energy = std::max(b.max_far_energy, r.far_energy);
        for (double e : r.equipartition) b.max_equipartition = std::max(b.max_equipartition, e);
        if (f.residuals) {
            b.max_residual_energy = std::max(b.max_residual_energy, r.residual_energy);
            b.max_residual_jacobian = std::max(b.max_residual_jacobian, r.residual_jacobian);
            b.max_residual_mass = std::max(b.max_residual_mass, r.residual_mass);
        }
        for (std::size_t k = 0; k < r.div_j.size() && k < b.div_j_sup.size(); ++k)
            b.div_j_sup[k] = std::max(b.div_j_sup[k], std::abs(r.div_j[k]));
        b.rows.push_back(std::move(r));
    }
    for (std::size_t i = 1; i < b.rows.size(); ++i) {
        const DiagnosticRow &a = b.rows[i - 1], &c = b.rows[i];
        const double dt = c.t - a.t;
        for (std::size_t k = 0; k < b.div_j_integrated.size(); ++k)
            if (k < a.div_j.size() && k < c.div_j.size())
                b.div_j_integrated[k] += 0.5 * dt * (std::abs(a.div_j[k]) + std::abs(c.div_j[k]));
    }
    if (!b.rows.empty()) {
        b.energy_offset_variation = off_max - off_min;
        b.kinetic_total = b.rows.back().kinetic;
    }
    return b;
}

}  // namespace glv
