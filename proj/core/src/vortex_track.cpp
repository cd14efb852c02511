#include "glv/vortex_track.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "glv/errors.hpp"
#include "glv/operators.hpp"
#include "glv/ren_energy.hpp"
#include "glv/test_functions.hpp"

namespace glv {

int cell_winding(const ComplexField& u, int i, int j) {
    const cplx c[4] = {u(i, j), u(i + 1, j), u(i + 1, j + 1), u(i, j + 1)};
    double total = 0.0;
    for (int k = 0; k < 4; ++k) total += std::arg(c[(k + 1) % 4] * std::conj(c[k]));
    return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

Detection detect_vortices(const ComplexField& u, double eps, const DetectionOptions& options) {
    const Grid& g = u.grid;
    const int c1 = g.n1() - 1, c2 = g.n2() - 1;
    std::vector<int> winding(g.cell_count(), 0);
    std::vector<double> cell_min(g.cell_count(), 0.0);
    for (int j = 0; j < c2; ++j) {
        for (int i = 0; i < c1; ++i) {
            const double m = std::min({std::abs(u(i, j)), std::abs(u(i + 1, j)), std::abs(u(i, j + 1)),
                                       std::abs(u(i + 1, j + 1))});
            cell_min[g.cell_index(i, j)] = m;
            if (m < options.amplitude_threshold) winding[g.cell_index(i, j)] = cell_winding(u, i, j);
        }
    }

    // A zero sitting exactly on a node has no defined phase; its winding is
    // measured on the surrounding ring of eight nodes and credited to one
    // adjacent cell.
    double scale = 0.0;
    for (const cplx& v : u.values) scale = std::max(scale, std::abs(v));
    const double tiny = 1e-12 * scale;
    for (int j = 1; j < g.n2() - 1; ++j) {
        for (int i = 1; i < g.n1() - 1; ++i) {
            if (std::abs(u(i, j)) > tiny) continue;
            const std::pair<int, int> ring[8] = {{1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}, {-1, -1}, {0, -1}, {1, -1}};
            double total = 0.0;
            for (int k = 0; k < 8; ++k) {
                const cplx a = u(i + ring[k].first, j + ring[k].second);
                const cplx b = u(i + ring[(k + 1) % 8].first, j + ring[(k + 1) % 8].second);
                total += std::arg(b * std::conj(a));
            }
            for (int b = j - 1; b <= j; ++b)
                for (int a = i - 1; a <= i; ++a) winding[g.cell_index(a, b)] = 0;
            winding[g.cell_index(i, j)] = static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
        }
    }

    // 8-connected clusters of cells with nonzero winding, in row-major order
    // of their first cell.
    std::vector<int> label(g.cell_count(), -1);
    struct Cluster {
        std::vector<std::pair<int, int>> cells;
        int degree = 0;
    };
    std::vector<Cluster> clusters;
    for (int j = 0; j < c2; ++j) {
        for (int i = 0; i < c1; ++i) {
            const std::size_t start = g.cell_index(i, j);
            if (winding[start] == 0 || label[start] >= 0) continue;
            Cluster cl;
            std::vector<std::pair<int, int>> stack{{i, j}};
            label[start] = static_cast<int>(clusters.size());
            while (!stack.empty()) {
                const auto [a, b] = stack.back();
                stack.pop_back();
                cl.cells.emplace_back(a, b);
                cl.degree += winding[g.cell_index(a, b)];
                for (int db = -1; db <= 1; ++db) {
                    for (int da = -1; da <= 1; ++da) {
                        const int na = a + da, nb = b + db;
                        if (na < 0 || nb < 0 || na >= c1 || nb >= c2) continue;
                        const std::size_t n = g.cell_index(na, nb);
                        if (winding[n] == 0 || label[n] >= 0) continue;
                        label[n] = label[start];
                        stack.emplace_back(na, nb);
                    }
                }
            }
            clusters.push_back(std::move(cl));
        }
    }

    Detection det;
    det.config.time = u.time;
    if (clusters.empty()) return det;
    const ScalarField J = jacobian(u);
    const double radius_max = std::max(options.centroid_radius_eps * eps, 2.0 * g.h());

    std::vector<Vec2> centers;
    for (const Cluster& cl : clusters) {
        Vec2 c{};
        for (const auto& [a, b] : cl.cells) c += g.cell_center(a, b);
        centers.push_back(c / static_cast<double>(cl.cells.size()));
    }

    for (std::size_t self = 0; self < clusters.size(); ++self) {
        const Cluster& cl = clusters[self];
        // Ball radius stops halfway to the nearest other cluster.
        double radius = radius_max;
        for (std::size_t o = 0; o < clusters.size(); ++o)
            if (o != self) radius = std::min(radius, 0.5 * distance(centers[o], centers[self]));
        radius = std::max(radius, 2.0 * g.h());
        const int reach = static_cast<int>(std::ceil(radius / g.h())) + 1;
        Vec2 guess{};
        double min_mod = std::numeric_limits<double>::infinity();
        for (const auto& [a, b] : cl.cells) {
            if (g.in_collar(a, b, options.collar) || g.in_collar(a + 1, b + 1, options.collar))
                throw BoundaryContamination("vortex cluster touches the boundary collar near " +
                                            std::to_string(g.cell_center(a, b).x) + ", " +
                                            std::to_string(g.cell_center(a, b).y));
            guess += g.cell_center(a, b);
            min_mod = std::min(min_mod, cell_min[g.cell_index(a, b)]);
        }
        if (cl.degree != 1 && cl.degree != -1)
            throw DegreeOutOfRange("vortex cluster near " + std::to_string(guess.x / cl.cells.size()) + ", " +
                                   std::to_string(guess.y / cl.cells.size()) + " has winding " +
                                   std::to_string(cl.degree));
        guess = guess / static_cast<double>(cl.cells.size());

        // Jacobian-weighted centroid with a smooth taper at the ball edge.
        Vec2 pos = guess;
        for (int it = 0; it < options.centroid_iterations; ++it) {
            const int ci = static_cast<int>(std::floor((pos.x - g.origin().x) / g.h()));
            const int cj = static_cast<int>(std::floor((pos.y - g.origin().y) / g.h()));
            Vec2 moment{};
            double mass = 0.0;
            for (int b = std::max(0, cj - reach); b <= std::min(c2 - 1, cj + reach); ++b) {
                for (int a = std::max(0, ci - reach); a <= std::min(c1 - 1, ci + reach); ++a) {
                    const Vec2 x = g.cell_center(a, b);
                    const double r = distance(x, pos);
                    if (r >= radius) continue;
                    const double w = smooth_step((radius - r) / (0.5 * radius)) * cl.degree * J(a, b);
                    moment += w * x;
                    mass += w;
                }
            }
            if (mass <= 0.0) break;
            pos = moment / mass;
        }
        det.config.positions.push_back(pos);
        det.config.degrees.push_back(cl.degree);
        det.cluster_size.push_back(static_cast<int>(cl.cells.size()));
        det.min_modulus.push_back(min_mod);
    }
    return det;
}

Assignment match_tracks(const VortexConfiguration& prev, const VortexConfiguration& cur, double cap) {
    if (prev.size() != cur.size())
        throw TrackingLost("vortex count changed from " + std::to_string(prev.size()) + " to " +
                           std::to_string(cur.size()));
    const std::size_t n = prev.size();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Assignment best;
    best.cost = std::numeric_limits<double>::infinity();
    bool found = false;
    do {
        bool ok = true;
        double cost = 0.0, worst = 0.0;
        for (std::size_t k = 0; k < n && ok; ++k) {
            if (prev.degrees[k] != cur.degrees[perm[k]]) {
                ok = false;
                break;
            }
            const double d = distance(prev.positions[k], cur.positions[perm[k]]);
            cost += d;
            worst = std::max(worst, d);
        }
        if (ok && cost < best.cost) {
            best.index = perm;
            best.cost = cost;
            best.max_step = worst;
            found = true;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (!found) throw TrackingLost("vortex degrees changed between frames");
    if (best.max_step > cap)
        throw TrackingLost("vortex moved " + std::to_string(best.max_step) + " in one frame, cap " +
                           std::to_string(cap));
    return best;
}

namespace {

ExcessReport assemble_excess(const ComplexField& u, const VortexConfiguration& config,
                             const EpsilonScaling& scaling, double gamma, double W, double threshold) {
    ExcessReport r;
    r.energy = total_energy(u, scaling);
    r.gamma = gamma;
    r.W = W;
    const double n = static_cast<double>(config.size());
    r.W_eps = n * std::numbers::pi * scaling.log_inv_eps() + n * gamma + W;
    r.excess = r.energy - r.W_eps;
    r.well_prepared = std::abs(r.excess) < threshold;
    return r;
}

}  // namespace

ExcessReport energy_excess(const ComplexField& u, const VortexConfiguration& config,
                           const EpsilonScaling& scaling, double gamma, const BoundaryCondition& bc,
                           double threshold) {
    const double W = config.empty() ? 0.0 : renormalized_energy(config, bc, u.grid).W;
    return assemble_excess(u, config, scaling, gamma, W, threshold);
}

ExcessReport energy_excess(const ComplexField& u, const VortexConfiguration& config,
                           const EpsilonScaling& scaling, double gamma, RenormalizedEnergy& energy,
                           double threshold) {
    require_same_grid(u.grid, energy.grid(), "energy_excess");
    const double W = config.empty() ? 0.0 : energy.energy(config).W;
    return assemble_excess(u, config, scaling, gamma, W, threshold);
}

double equipartition_defect(const ComplexField& u, Vec2 center, double sigma, const EpsilonScaling& scaling) {
    const Mat2 m = integrate(stress(u), Region::ball(center, sigma));
    const double pi = std::numbers::pi;
    const Mat2 d{scaling.k_eps * m.xx - pi, scaling.k_eps * m.xy, scaling.k_eps * m.yx, scaling.k_eps * m.yy - pi};
    return frobenius(d);
}

}  // namespace glv
