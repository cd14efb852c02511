#pragma once

#include <filesystem>
#include <optional>
#include <vector>

namespace glv {

/// Degree-one vortex core f(ρ) on [0, r_max], solving
/// f'' + f'/ρ − f/ρ² + (1 − f²)f = 0 with f(0) = 0 and
/// f(r_max) = 1 − 1/(2 r_max²). Uniform nodes ρᵢ = i·dr.
struct RadialProfile {
    double r_max = 40.0;
    double dr = 0.0;
    std::vector<double> f;
    int newton_iterations = 0;

    [[nodiscard]] int nodes() const { return static_cast<int>(f.size()); }
    /// Cubic interpolation inside the table; the asymptote 1 − 1/(2ρ²)
    /// beyond r_max.
    [[nodiscard]] double operator()(double rho) const;
    [[nodiscard]] double derivative(double rho) const;
};

/// Solves the core problem by damped Newton iteration on the
/// second-order finite-difference discretization. `nodes` ≥ 1000.
/// Throws NoConvergence.
RadialProfile radial_profile(int nodes, double r_max = 40.0);

struct GammaEstimate {
    double gamma = 0.0;
    int nodes = 0;
    double r_max = 0.0;
    /// |γ(nodes) − γ(nodes/2)| from the two finest levels.
    double residual = 0.0;
};

/// γ = lim_R [π∫₀^R (f'² + f²/ρ² + (1−f²)²/2)ρ dρ − π log R] evaluated on
/// the table, with the analytic tail −π/(4R²) of the 1/(2ρ²) asymptote.
double core_energy_limit(const RadialProfile& profile);

/// γ with a convergence residual against the half-resolution profile.
GammaEstimate gamma_constant(const RadialProfile& profile);

/// π∫₀^R (f'² + f²/ρ² + (1−f²)²/2)ρ dρ for an arbitrary tabulated f on the
/// same uniform nodes.
double core_energy(const std::vector<double>& f, double dr, double R);

/// Profile shared by the library: r_max = 40 and 40001 nodes, cached in
/// $GLV_CACHE_DIR when that variable is set. Thread safe.
const RadialProfile& default_profile();

void save_profile(const std::filesystem::path& path, const RadialProfile& profile);
std::optional<RadialProfile> load_profile(const std::filesystem::path& path);

}  // namespace glv
