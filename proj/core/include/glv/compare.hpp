#pragma once

#include <string>
#include <vector>

#include "glv/ode_law.hpp"
#include "glv/simulate.hpp"

namespace glv {

struct CompareOptions {
    /// Three-point median filter on the tracked positions before
    /// differentiation.
    bool median_filter = false;
    /// Upper limit on the comparison horizon; ≤ 0 means none.
    double horizon_cap = 0.0;
};

/// One PDE frame inside the common horizon.
struct ComparisonSample {
    double t = 0.0;
    std::vector<Vec2> xi;      ///< tracked PDE positions
    std::vector<Vec2> a;       ///< ODE positions
    std::vector<Vec2> eta;     ///< ξ − a
    std::vector<Vec2> xi_dot;  ///< finite differences of ξ
    std::vector<Vec2> a_dot;   ///< law velocity at a(t)
    std::vector<Vec2> R;       ///< (λ₀ + dₖi)ξ̇ₖ + (1/π)∂W − F − dₖiG at a(t)
    double eta_norm = 0.0;     ///< (Σₖ|ηₖ|²)^½
    double R_norm = 0.0;
    double excess = 0.0;
    double kinetic = 0.0;
};

struct ComparisonReport {
    double lambda0 = 0.0;
    double horizon = 0.0;
    std::string pde_status;
    std::string ode_status;
    double t_star_pde = 0.0;
    double t_star_ode = 0.0;
    std::vector<ComparisonSample> samples;
    double sup_eta = 0.0;
    double int_eta = 0.0;
    /// max |ηₖ(0)|
    double eta0 = 0.0;
    /// max over samples and vortices of ||R| − √(λ₀²+1)|ξ̇ − ȧ|| / max(1, |R|).
    double identity_error = 0.0;
    /// The same with η̇ taken from differences of η instead of ξ̇ − ȧ.
    double identity_error_fd = 0.0;
    /// k_ε∫₀^H∫|∂ₜu|² and π Σ∫₀^H|ξ̇ₖ|².
    double kinetic = 0.0;
    double point_kinetic = 0.0;
    double mobility_slack = 0.0;
    /// ∫₀^H∫(k_ε p(u), w) and −π Σ∫₀^H(ξ̇ₖ, w(ξₖ)) for the vector test bank.
    std::vector<std::string> momentum_names;
    std::vector<double> momentum_pde;
    std::vector<double> momentum_points;
    double excess0 = 0.0;
    double excess_max_abs = 0.0;
};

/// Compares a PDE record with an ODE trajectory of the same configuration.
/// Throws HorizonMismatch if the requested horizons or degrees differ or if
/// fewer than two common samples exist.
ComparisonReport compare(const TrajectoryRecord& pde, const OdeTrajectory& ode, const OdeParams& params,
                         const CompareOptions& options = {});

/// Derivative of samples x(tᵢ) on a non-uniform grid: three-point centered
/// formula inside, one-sided three-point formula at both ends.
std::vector<Vec2> differentiate(const std::vector<double>& t, const std::vector<Vec2>& x);

}  // namespace glv
