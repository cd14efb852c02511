#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>

#include "glv/errors.hpp"
#include "glv/operators.hpp"
#include "glv/snapshot.hpp"

using namespace glv;

namespace {

constexpr double pi = std::numbers::pi;

template <class Fn>
ComplexField sample(const Grid& g, Fn fn) {
    ComplexField u(g);
    for (int j = 0; j < g.n2(); ++j)
        for (int i = 0; i < g.n1(); ++i) u(i, j) = fn(g.node(i, j));
    return u;
}

// Smooth field with nonvanishing modulus used in the convergence tests,
// together with its analytic derivatives.
cplx smooth_u(Vec2 p) {
    return cplx(1.2 + 0.3 * std::sin(2.0 * p.x + p.y), 0.4 * std::cos(p.x - 1.5 * p.y)) *
           std::exp(cplx(0.0, 0.8 * p.x * p.y));
}
cplx smooth_dx(Vec2 p) {
    const cplx a(1.2 + 0.3 * std::sin(2.0 * p.x + p.y), 0.4 * std::cos(p.x - 1.5 * p.y));
    const cplx ax(0.6 * std::cos(2.0 * p.x + p.y), -0.4 * std::sin(p.x - 1.5 * p.y));
    const cplx e = std::exp(cplx(0.0, 0.8 * p.x * p.y));
    return (ax + a * cplx(0.0, 0.8 * p.y)) * e;
}
cplx smooth_dy(Vec2 p) {
    const cplx a(1.2 + 0.3 * std::sin(2.0 * p.x + p.y), 0.4 * std::cos(p.x - 1.5 * p.y));
    const cplx ay(0.3 * std::cos(2.0 * p.x + p.y), 0.6 * std::sin(p.x - 1.5 * p.y));
    const cplx e = std::exp(cplx(0.0, 0.8 * p.x * p.y));
    return (ay + a * cplx(0.0, 0.8 * p.x)) * e;
}

double log2_ratio(double coarse, double fine) { return std::log2(coarse / fine); }

}  // namespace

TEST(Grid, RejectsSmallAndAnisotropicGrids) {
    EXPECT_THROW(Grid({0, 0}, {1, 1}, 8, 32), ConfigError);
    EXPECT_THROW(Grid({0, 0}, {1, 2}, 32, 32), ConfigError);
    const Grid g({0, 0}, {1, 2}, 33, 65);
    EXPECT_DOUBLE_EQ(g.h(), 1.0 / 32);
}

TEST(Grid, BoundaryClassificationIsTotal) {
    const Grid g = Grid::unit_square(17);
    int boundary = 0;
    for (int j = 0; j < 17; ++j)
        for (int i = 0; i < 17; ++i) boundary += g.is_boundary(i, j) ? 1 : 0;
    EXPECT_EQ(boundary, 4 * 16);
}

TEST(EpsilonScaling, DerivedFactorsAreExact) {
    const auto s = EpsilonScaling::make(0.04, 2.0);
    EXPECT_EQ(s.k_eps, 1.0 / std::log(1.0 / 0.04));
    EXPECT_EQ(s.lambda_eps, 2.0 * s.k_eps);
    EXPECT_THROW(EpsilonScaling::make(1.5, 1.0), ConfigError);
    EXPECT_THROW(EpsilonScaling::make(0.1, 0.0), ConfigError);
}

TEST(Current, ConstantFieldHasNoCurrent) {
    const Grid g = Grid::unit_square(32);
    const ComplexField u(g, cplx(0.3, -0.7));
    for (const Vec2& v : current(u).values) EXPECT_LT(norm(v), 1e-13);
    for (double v : jacobian(u).values) EXPECT_NEAR(v, 0.0, 1e-11);
}

TEST(Current, AffinePhaseGivesItsGradient) {
    const Grid g = Grid::unit_square(129);
    const Vec2 q{1.3, -0.6};
    const auto u = sample(g, [&](Vec2 p) { return std::exp(cplx(0.0, dot(q, p))); });
    const auto j = current(u);
    double worst = 0.0;
    for (const Vec2& v : j.values) worst = std::max(worst, norm(v - q));
    EXPECT_LT(worst, 1e-4);
}

TEST(Current, CirculationAroundMaskedVortexIsTwoPi) {
    const Grid g = Grid::unit_square(257);
    const Vec2 a{0.503, 0.497};
    const auto u = sample(g, [&](Vec2 p) {
        const Vec2 d = p - a;
        const double r = norm(d);
        return r < 0.05 ? cplx(0.0, 0.0) : cplx(d.x, d.y) / r;
    });
    const auto j = current(u);
    // Loops at distance ≥ 32h from the centre.
    for (int half : {40, 60, 100}) {
        const int c = 128;
        const double circ = circulation(j, c - half, c - half, c + half, c + half);
        EXPECT_NEAR(circ, 2.0 * pi, 0.02 * 2.0 * pi) << "half-width " << half;
    }
}

TEST(Jacobian, IdentityMapHasUnitJacobian) {
    const Grid g = Grid::unit_square(33);
    const auto u = sample(g, [](Vec2 p) { return cplx(p.x, p.y); });
    for (double v : jacobian(u).values) EXPECT_NEAR(v, 1.0, 1e-12);
    for (double v : jacobian_nodes(u).values) EXPECT_NEAR(v, 1.0, 1e-12);
}

TEST(Jacobian, TotalIsHalfTheBoundaryCirculation) {
    const Grid g = Grid::unit_square(64);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    ComplexField u(g);
    for (auto& v : u.values) v = {1.0 + 0.2 * dist(rng), 0.2 * dist(rng)};
    const auto J = jacobian(u);
    const double total = integrate(J);
    const double circ = circulation(current(u), 0, 0, g.n1() - 1, g.n2() - 1);
    EXPECT_NEAR(total, 0.5 * circ, 1e-12 * std::max(1.0, std::abs(circ)));
}

TEST(Jacobian, ConjugationFlipsSigns) {
    const Grid g = Grid::unit_square(40);
    const auto u = sample(g, smooth_u);
    const auto ub = sample(g, [](Vec2 p) { return std::conj(smooth_u(p)); });
    const auto J = jacobian(u), Jb = jacobian(ub);
    const auto j = current(u), jb = current(ub);
    for (std::size_t n = 0; n < J.values.size(); ++n) EXPECT_NEAR(J.values[n], -Jb.values[n], 1e-12);
    for (std::size_t n = 0; n < j.values.size(); ++n) {
        EXPECT_NEAR(j.values[n].x, -jb.values[n].x, 1e-12);
        EXPECT_NEAR(j.values[n].y, -jb.values[n].y, 1e-12);
    }
}

TEST(FieldCore, SecondOrderConvergenceForSmoothFields) {
    std::vector<double> err_j, err_J, err_T, err_e;
    const auto scaling = EpsilonScaling::make(0.5, 1.0);
    for (int n : {33, 65, 129}) {
        const Grid g({0.0, 0.0}, {1.0, 1.0}, n, n);
        const auto u = sample(g, smooth_u);
        const auto j = current(u);
        const auto J = jacobian(u);
        const auto T = stress(u);
        const auto e = energy_density(u, scaling);
        double ej = 0.0, eJ = 0.0, eT = 0.0, ee = 0.0;
        for (int b = 0; b < n; ++b) {
            for (int a = 0; a < n; ++a) {
                const Vec2 p = g.node(a, b);
                const cplx v = smooth_u(p), dx = smooth_dx(p), dy = smooth_dy(p);
                ej = std::max(ej, norm(j(a, b) - Vec2{rcross(v, dx), rcross(v, dy)}));
                eT = std::max(eT, std::abs(T(a, b).xy - rdot(dx, dy)));
                const double pot = 1.0 - std::norm(v);
                const double ex = 0.5 * (std::norm(dx) + std::norm(dy)) + pot * pot / (4.0 * 0.25);
                // boundary densities use a one-sided edge; only the integral is second order there
                if (!g.is_boundary(a, b)) ee = std::max(ee, std::abs(e(a, b) - ex));
                if (a < n - 1 && b < n - 1) {
                    const Vec2 c = g.cell_center(a, b);
                    eJ = std::max(eJ, std::abs(J(a, b) - rcross(smooth_dx(c), smooth_dy(c))));
                }
            }
        }
        err_j.push_back(ej);
        err_J.push_back(eJ);
        err_T.push_back(eT);
        err_e.push_back(ee);
    }
    for (const auto* errs : {&err_j, &err_J, &err_T, &err_e}) {
        EXPECT_GE(log2_ratio((*errs)[0], (*errs)[1]), 1.8);
        EXPECT_GE(log2_ratio((*errs)[1], (*errs)[2]), 1.8);
    }
}

TEST(Stress, PlaneWaveStressAndDensity) {
    const Grid g = Grid::unit_square(257);
    const Vec2 q{2.0, 1.0};
    const auto u = sample(g, [&](Vec2 p) { return std::exp(cplx(0.0, dot(q, p))); });
    const auto T = stress(u);
    const auto e = energy_density(u, EpsilonScaling::make(0.1, 1.0));
    for (int j = 0; j < g.n2(); j += 17) {
        for (int i = 0; i < g.n1(); i += 13) {
            EXPECT_NEAR(T(i, j).xx, q.x * q.x, 1e-3);
            EXPECT_NEAR(T(i, j).xy, q.x * q.y, 1e-3);
            EXPECT_EQ(T(i, j).xy, T(i, j).yx);
            EXPECT_NEAR(T(i, j).yy, q.y * q.y, 1e-3);
            EXPECT_NEAR(e(i, j), 0.5 * dot(q, q), 1e-3);
        }
    }
}

TEST(Energy, UnitFieldHasZeroEnergy) {
    const Grid g = Grid::unit_square(32);
    const ComplexField u(g, cplx(1.0, 0.0));
    EXPECT_EQ(total_energy(u, EpsilonScaling::make(0.05, 1.0)), 0.0);
}

TEST(JacobianVelocity, StaticFieldHasNoVelocity) {
    const Grid g = Grid::unit_square(32);
    const auto u = sample(g, smooth_u);
    const ComplexField ut(g);
    for (const Vec2& v : jacobian_velocity(u, ut).values) {
        EXPECT_EQ(v.x, 0.0);
        EXPECT_EQ(v.y, 0.0);
    }
}

TEST(JacobianVelocity, PhaseRotationMatchesStencilAndGradient) {
    const double omega = 1.7;
    const Grid g = Grid::unit_square(129);
    const auto u = sample(g, smooth_u);
    ComplexField ut(g);
    for (std::size_t n = 0; n < u.values.size(); ++n) ut.values[n] = cplx(0.0, omega) * u.values[n];
    const auto V = jacobian_velocity(u, ut);
    const double h = g.h();
    double worst = 0.0;
    for (int j = 1; j < g.n2() - 1; ++j) {
        for (int i = 1; i < g.n1() - 1; ++i) {
            // three-node stencil: V₁ = −ω (u, (u_{i+1} − u_{i−1})/2h)
            const double sx = -omega * rdot(u(i, j), (u(i + 1, j) - u(i - 1, j)) / (2.0 * h));
            const double sy = -omega * rdot(u(i, j), (u(i, j + 1) - u(i, j - 1)) / (2.0 * h));
            EXPECT_NEAR(V(i, j).x, sx, 1e-12);
            EXPECT_NEAR(V(i, j).y, sy, 1e-12);
            const Vec2 p = g.node(i, j);
            const cplx v = smooth_u(p);
            const Vec2 grad_half_mod{rdot(v, smooth_dx(p)), rdot(v, smooth_dy(p))};
            worst = std::max(worst, norm(V(i, j) + omega * grad_half_mod));
        }
    }
    EXPECT_LT(worst, 1e-3);
}

TEST(JacobianVelocity, TimeDerivativeOfJacobianIsCurlOfVelocity) {
    const Grid g = Grid::unit_square(97);
    const double dt = 1e-4;
    const Vec2 c{0.3, -0.2};
    auto at_time = [&](double t) {
        return sample(g, [&](Vec2 p) { return smooth_u(p - t * c); });
    };
    const auto u0 = at_time(0.0), u1 = at_time(dt);
    ComplexField mid(g), ut(g);
    for (std::size_t n = 0; n < mid.values.size(); ++n) {
        mid.values[n] = 0.5 * (u0.values[n] + u1.values[n]);
        ut.values[n] = (u1.values[n] - u0.values[n]) / dt;
    }
    const auto J0 = jacobian(u0), J1 = jacobian(u1);
    const auto cV = curl(jacobian_velocity(mid, ut));
    double worst = 0.0, scale = 0.0;
    for (int j = 3; j < J0.ny() - 3; ++j) {
        for (int i = 3; i < J0.nx() - 3; ++i) {
            const double dJ = (J1(i, j) - J0(i, j)) / dt;
            worst = std::max(worst, std::abs(dJ - cV(i, j)));
            scale = std::max(scale, std::abs(dJ));
        }
    }
    EXPECT_LT(worst, 2e-3 * scale);
}

TEST(Momentum, TranslationGivesMinusVelocityTimesStress) {
    const Grid g = Grid::unit_square(65);
    const Vec2 c{0.5, 0.25};
    const auto u = sample(g, smooth_u);
    ComplexField ut(g);
    const auto d1 = derivative(u, 0), d2 = derivative(u, 1);
    for (std::size_t n = 0; n < ut.values.size(); ++n) ut.values[n] = -(c.x * d1[n] + c.y * d2[n]);
    const auto p = momentum(u, ut);
    const auto T = stress(u);
    for (std::size_t n = 0; n < p.values.size(); ++n) {
        const Vec2 expected = -left_multiply(c, T.values[n]);
        EXPECT_NEAR(p.values[n].x, expected.x, 1e-12);
        EXPECT_NEAR(p.values[n].y, expected.y, 1e-12);
    }
}

TEST(PairWithTest, AreaAndZeroTest) {
    const Grid g = Grid::unit_square(33);
    ScalarField one(g, Centering::Node, 1.0);
    const ScalarTest unit = [](Vec2, double) { Jet j; j.value = 1.0; return j; };
    const ScalarTest zero = [](Vec2, double) { return Jet{}; };
    EXPECT_NEAR(pair_with_test(one, unit), 1.0, 1e-14);
    EXPECT_EQ(pair_with_test(one, zero), 0.0);
    EXPECT_NEAR(pair_with_test(one, unit, 0.0, Region::ball({0.5, 0.5}, 0.3)), pi * 0.09, 2e-3);
    EXPECT_NEAR(pair_with_test(one, unit, 0.0, Region::box({0.25, 0.25}, {0.75, 0.5})), 0.125, 1e-12);
}

TEST(GConvection, ConvectiveTermAgainstGradientMatchesJacobian) {
    // ((G·∇)iu, ∇u) against iG·J(u) with the plaquette Jacobian averaged to nodes.
    std::vector<double> errs;
    for (int n : {33, 65, 129}) {
        const Grid g = Grid::unit_square(n);
        const auto u = sample(g, smooth_u);
        const auto d1 = derivative(u, 0), d2 = derivative(u, 1);
        const auto J = cell_to_node(jacobian(u));
        double worst = 0.0;
        for (int j = 1; j < n - 1; ++j) {
            for (int i = 1; i < n - 1; ++i) {
                const Vec2 p = g.node(i, j);
                const Vec2 G{std::sin(p.y), 0.5 + p.x * p.x};
                const std::size_t k = g.index(i, j);
                const cplx conv = cplx(0.0, 1.0) * (G.x * d1[k] + G.y * d2[k]);
                const Vec2 lhs{rdot(conv, d1[k]), rdot(conv, d2[k])};
                worst = std::max(worst, norm(lhs - J.values[k] * rot90(G)));
            }
        }
        errs.push_back(worst);
    }
    EXPECT_GE(log2_ratio(errs[0], errs[1]), 1.8);
    EXPECT_GE(log2_ratio(errs[1], errs[2]), 1.8);
}

TEST(Snapshot, RoundTrip) {
    const Grid g({0.25, -1.0}, {2.0, 1.0}, 33, 17);
    auto u = sample(g, smooth_u);
    u.time = 0.125;
    const auto path = std::filesystem::temp_directory_path() / "glv_roundtrip.bin";
    write_snapshot(path, u, 0.04);
    const auto s = read_snapshot(path);
    EXPECT_EQ(s.eps, 0.04);
    EXPECT_EQ(s.u.time, 0.125);
    EXPECT_TRUE(s.u.grid == g);
    EXPECT_EQ(s.u.values, u.values);
    EXPECT_EQ(std::filesystem::file_size(path), 4 + 8 * 8 + 16 * g.size());
    std::filesystem::remove(path);
}

TEST(Energy, TotalEnergyConvergesAtSecondOrder) {
    const auto scaling = EpsilonScaling::make(0.5, 1.0);
    // Reference from a much finer grid; the trapezoid rule is second order.
    auto energy_at = [&](int n) {
        const Grid g = Grid::unit_square(n);
        return total_energy(sample(g, smooth_u), scaling);
    };
    const double ref = energy_at(1025);
    const double e1 = std::abs(energy_at(33) - ref);
    const double e2 = std::abs(energy_at(65) - ref);
    const double e3 = std::abs(energy_at(129) - ref);
    EXPECT_GE(log2_ratio(e1, e2), 1.8);
    EXPECT_GE(log2_ratio(e2, e3), 1.8);
}
