#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "glv/errors.hpp"
#include "glv/operators.hpp"
#include "glv/vortex_track.hpp"

using namespace glv;

namespace {

// u = Π ((z − aₖ)/√(|z − aₖ|² + ε²)) with z conjugated for negative degree.
ComplexField ansatz(const Grid& g, const VortexConfiguration& c, double eps) {
    ComplexField u(g, {1.0, 0.0});
    for (int j = 0; j < g.n2(); ++j)
        for (int i = 0; i < g.n1(); ++i) {
            const Vec2 p = g.node(i, j);
            for (std::size_t k = 0; k < c.size(); ++k) {
                cplx z(p.x - c.positions[k].x, p.y - c.positions[k].y);
                const double m = std::sqrt(std::norm(z) + eps * eps);
                for (int d = 0; d < std::abs(c.degrees[k]); ++d)
                    u(i, j) *= (c.degrees[k] > 0 ? z : std::conj(z)) / m;
            }
        }
    return u;
}

double dist(Vec2 a, Vec2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

}  // namespace

TEST(Detection, UniformStateHasNoVortices) {
    const Grid g = Grid::unit_square(33);
    EXPECT_TRUE(detect_vortices(ComplexField(g, {1.0, 0.0}), 0.05).config.empty());
    EXPECT_TRUE(detect_vortices(ComplexField(g, std::polar(0.7, 2.0)), 0.05).config.empty());
}

TEST(Detection, SubGridPosition) {
    const double eps = 0.05;
    const Grid g = Grid::unit_square(161);
    const VortexConfiguration c{{{0.4137, 0.5521}}, {1}};
    const Detection d = detect_vortices(ansatz(g, c, eps), eps);
    ASSERT_EQ(d.config.size(), 1u);
    EXPECT_EQ(d.config.degrees[0], 1);
    EXPECT_LT(dist(d.config.positions[0], c.positions[0]), 0.05 * g.h());
    EXPECT_GT(d.cluster_size[0], 0);
    EXPECT_LT(d.min_modulus[0], 0.5);
}

TEST(Detection, TranslationByGridNodes) {
    const double eps = 0.04;
    const Grid g = Grid::unit_square(129);
    const VortexConfiguration c{{{0.3312, 0.4071}, {0.6101, 0.5533}}, {1, -1}};
    const Detection base = detect_vortices(ansatz(g, c, eps), eps);
    ASSERT_EQ(base.config.size(), 2u);
    for (auto [di, dj] : {std::pair{3, 0}, {0, -5}, {7, 4}}) {
        VortexConfiguration moved = c;
        for (Vec2& p : moved.positions) p = p + Vec2{di * g.h(), dj * g.h()};
        const Detection d = detect_vortices(ansatz(g, moved, eps), eps);
        ASSERT_EQ(d.config.size(), 2u);
        for (std::size_t k = 0; k < 2; ++k) {
            EXPECT_EQ(d.config.degrees[k], base.config.degrees[k]);
            EXPECT_NEAR(d.config.positions[k].x, base.config.positions[k].x + di * g.h(), 1e-10);
            EXPECT_NEAR(d.config.positions[k].y, base.config.positions[k].y + dj * g.h(), 1e-10);
        }
    }
}

TEST(Detection, ConjugationFlipsDegrees) {
    const double eps = 0.04;
    const Grid g = Grid::unit_square(129);
    const VortexConfiguration c{{{0.35, 0.45}, {0.62, 0.58}}, {1, -1}};
    ComplexField u = ansatz(g, c, eps);
    const Detection a = detect_vortices(u, eps);
    for (cplx& v : u.values) v = std::conj(v);
    const Detection b = detect_vortices(u, eps);
    ASSERT_EQ(a.config.size(), b.config.size());
    for (std::size_t k = 0; k < a.config.size(); ++k) {
        EXPECT_EQ(a.config.degrees[k], -b.config.degrees[k]);
        EXPECT_NEAR(dist(a.config.positions[k], b.config.positions[k]), 0.0, 1e-12);
    }
}

TEST(Detection, DoubleDegreeIsRejected) {
    const double eps = 0.05;
    const Grid g = Grid::unit_square(81);
    EXPECT_THROW(detect_vortices(ansatz(g, {{{0.5, 0.5}}, {2}}, eps), eps), DegreeOutOfRange);
}

TEST(Detection, BoundaryClusterIsRejected) {
    const double eps = 0.05;
    const Grid g = Grid::unit_square(81);
    EXPECT_THROW(detect_vortices(ansatz(g, {{{0.02, 0.5}}, {1}}, eps), eps), BoundaryContamination);
}

TEST(Detection, CellWindingLocalisesTheZero) {
    const Grid g = Grid::unit_square(33);
    const VortexConfiguration c{{{0.51, 0.52}}, {-1}};
    const ComplexField u = ansatz(g, c, 0.05);
    const int ci = static_cast<int>(0.51 / g.h()), cj = static_cast<int>(0.52 / g.h());
    int total = 0;
    for (int j = 0; j < g.n2() - 1; ++j)
        for (int i = 0; i < g.n1() - 1; ++i) {
            const int w = cell_winding(u, i, j);
            total += w;
            if (i != ci || j != cj) EXPECT_EQ(w, 0) << i << "," << j;
        }
    EXPECT_EQ(cell_winding(u, ci, cj), -1);
    EXPECT_EQ(total, -1);
}

TEST(MatchTracks, RecoversPermutation) {
    const VortexConfiguration prev{{{0.2, 0.2}, {0.8, 0.2}, {0.5, 0.8}}, {1, 1, -1}};
    const VortexConfiguration cur{{{0.51, 0.79}, {0.79, 0.21}, {0.21, 0.2}}, {-1, 1, 1}};
    const Assignment a = match_tracks(prev, cur, 0.1);
    ASSERT_EQ(a.index.size(), 3u);
    EXPECT_EQ(a.index[0], 2u);
    EXPECT_EQ(a.index[1], 1u);
    EXPECT_EQ(a.index[2], 0u);
    EXPECT_NEAR(a.cost, 0.01 + std::sqrt(2e-4) + std::sqrt(2e-4), 1e-12);
    EXPECT_NEAR(a.max_step, std::sqrt(2e-4), 1e-12);
}

TEST(MatchTracks, MinimisesTotalDistance) {
    // Greedy nearest-first pairs 1 with 0 (0.01) and then 0 with 1 (0.2).
    const VortexConfiguration prev{{{0.0, 0.0}, {0.1, 0.0}}, {1, 1}};
    const VortexConfiguration cur{{{0.09, 0.0}, {0.2, 0.0}}, {1, 1}};
    const Assignment a = match_tracks(prev, cur, 1.0);
    EXPECT_EQ(a.index[0], 0u);
    EXPECT_EQ(a.index[1], 1u);
    EXPECT_NEAR(a.cost, 0.19, 1e-12);
}

TEST(MatchTracks, DegreesAreNeverMixed) {
    const VortexConfiguration prev{{{0.0, 0.0}, {1.0, 0.0}}, {1, -1}};
    const VortexConfiguration cur{{{0.99, 0.0}, {0.01, 0.0}}, {1, -1}};
    const Assignment a = match_tracks(prev, cur, 2.0);
    EXPECT_EQ(a.index[0], 0u);
    EXPECT_EQ(a.index[1], 1u);
    EXPECT_THROW(match_tracks(prev, cur, 0.5), TrackingLost);
}

TEST(MatchTracks, Failures) {
    const VortexConfiguration two{{{0.2, 0.2}, {0.8, 0.2}}, {1, -1}};
    const VortexConfiguration one{{{0.2, 0.2}}, {1}};
    const VortexConfiguration flipped{{{0.2, 0.2}, {0.8, 0.2}}, {1, 1}};
    EXPECT_THROW(match_tracks(two, one, 1.0), TrackingLost);
    EXPECT_THROW(match_tracks(two, flipped, 1.0), TrackingLost);
    const VortexConfiguration far{{{0.5, 0.2}, {0.8, 0.2}}, {1, -1}};
    EXPECT_THROW(match_tracks(two, far, 0.1), TrackingLost);
    EXPECT_NO_THROW(match_tracks(two, far, 0.31));
    EXPECT_TRUE(match_tracks({}, {}, 0.1).index.empty());
}

TEST(MatchTracks, MobilityCap) {
    EXPECT_DOUBLE_EQ(mobility_cap(0.01, 0.01, 10.0), 1.0);
    EXPECT_DOUBLE_EQ(mobility_cap(0.02, 1e-4, 10.0), 0.2);
}

// For a radial vortex the stress integrates to ½∫|∇u|² Id over the ball,
// with ∫|∇u|² = 2π ∫₀^σ (f'² + f²/r²) r dr.
TEST(Equipartition, RadialVortexOracle) {
    const double eps = 0.05, sigma = 0.2;
    const auto sc = EpsilonScaling::make(eps, 1.0);
    const int m = 200000;
    double I = 0.0;
    for (int k = 0; k < m; ++k) {
        const double r = (k + 0.5) * sigma / m;
        const double f = r / std::sqrt(r * r + eps * eps);
        const double fp = eps * eps / std::pow(r * r + eps * eps, 1.5);
        I += (fp * fp + f * f / (r * r)) * r * sigma / m;
    }
    const double pi = std::numbers::pi;
    const double oracle = std::sqrt(2.0) * std::abs(sc.k_eps * pi * I - pi);
    const Grid g = Grid::unit_square(161);
    const double got = equipartition_defect(ansatz(g, {{{0.5, 0.5}}, {1}}, eps), {0.5, 0.5}, sigma, sc);
    EXPECT_NEAR(got, oracle, 0.01 * oracle);
}

TEST(Equipartition, RotationInvariance) {
    const double eps = 0.05;
    const auto sc = EpsilonScaling::make(eps, 1.0);
    const Grid g = Grid::unit_square(81);
    ComplexField u = ansatz(g, {{{0.5, 0.5}}, {1}}, eps);
    const double a = equipartition_defect(u, {0.5, 0.5}, 0.2, sc);
    for (cplx& v : u.values) v *= std::polar(1.0, 0.7);
    EXPECT_NEAR(equipartition_defect(u, {0.5, 0.5}, 0.2, sc), a, 1e-12);
    EXPECT_DOUBLE_EQ(equipartition_defect(ComplexField(g, {1.0, 0.0}), {0.5, 0.5}, 0.2, sc),
                     std::sqrt(2.0) * std::numbers::pi);
}
