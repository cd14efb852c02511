#pragma once

#include <vector>

#include "glv/boundary.hpp"
#include "glv/fields.hpp"
#include "glv/ren_energy.hpp"
#include "glv/vortex.hpp"

namespace glv {

struct DetectionOptions {
    double amplitude_threshold = 0.5;
    /// Clusters with a cell whose corner lies within this many nodes of the
    /// boundary raise BoundaryContamination.
    int collar = 3;
    /// Radius of the Jacobian-weighted centroid, as a multiple of ε; it is
    /// capped at half the distance to the nearest other cluster and never
    /// below two grid spacings.
    double centroid_radius_eps = 3.0;
    int centroid_iterations = 2;
};

struct Detection {
    VortexConfiguration config;
    std::vector<int> cluster_size;
    std::vector<double> min_modulus;
};

/// Winding-number detection on cells with a corner below the amplitude
/// threshold, 8-connected clustering, and sub-grid positions from the
/// Jacobian-weighted centroid. Throws DegreeOutOfRange and
/// BoundaryContamination.
Detection detect_vortices(const ComplexField& u, double eps, const DetectionOptions& options = {});

/// Winding of the phase of u around cell (i, j), counter-clockwise.
int cell_winding(const ComplexField& u, int i, int j);

struct Assignment {
    /// cur index matched to each prev index
    std::vector<std::size_t> index;
    /// Σ of matched distances
    double cost = 0.0;
    double max_step = 0.0;
};

/// Minimum-total-distance matching among vortices of equal degree. Throws
/// TrackingLost if counts or degree multisets differ or if the best
/// matching moves a vortex further than `cap`.
Assignment match_tracks(const VortexConfiguration& prev, const VortexConfiguration& cur, double cap);

/// Per-frame mobility cap 10·max(h, Δt·v_max).
inline double mobility_cap(double h, double frame_dt, double v_max) {
    return 10.0 * std::max(h, frame_dt * v_max);
}

struct ExcessReport {
    double energy = 0.0;
    double W = 0.0;
    double gamma = 0.0;
    double W_eps = 0.0;
    double excess = 0.0;
    bool well_prepared = false;
};

/// D_ε = E_ε(u) − (πN log(1/ε) + Nγ + W(a)); W is evaluated on u's grid.
ExcessReport energy_excess(const ComplexField& u, const VortexConfiguration& config,
                           const EpsilonScaling& scaling, double gamma, const BoundaryCondition& bc,
                           double threshold = 0.5);
/// Same, reusing a W evaluator built for u's grid.
ExcessReport energy_excess(const ComplexField& u, const VortexConfiguration& config,
                           const EpsilonScaling& scaling, double gamma, RenormalizedEnergy& energy,
                           double threshold = 0.5);

/// |∫_{B_σ(center)} k_ε(∇u ⊗ ∇u) dx − π Id| in the Frobenius norm.
double equipartition_defect(const ComplexField& u, Vec2 center, double sigma,
                            const EpsilonScaling& scaling);

}  // namespace glv
