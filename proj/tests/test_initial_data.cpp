#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <numbers>

#include "glv/errors.hpp"
#include "glv/initial_data.hpp"
#include "glv/operators.hpp"
#include "glv/radial_profile.hpp"
#include "glv/vortex_track.hpp"

using namespace glv;

namespace {

// Shooting solution of f'' + f'/ρ − f/ρ² + (1 − f²)f = 0 from f ≈ aρ − aρ³/8,
// with a found by bisection, integrated by classical RK4.
struct Shooting {
    double a = 0.0;
    std::vector<double> rho, f, fp;
};

Shooting shoot(double R, double dr) {
    auto rhs = [](double r, double y, double yp) { return -yp / r + y / (r * r) - (1.0 - y * y) * y; };
    auto run = [&](double a, Shooting* out) {
        double r = dr, y = a * dr - a * dr * dr * dr / 8.0, yp = a - 3.0 * a * dr * dr / 8.0;
        if (out) {
            out->rho = {0.0, r};
            out->f = {0.0, y};
            out->fp = {a, yp};
        }
        while (r < R - 1e-12) {
            const double k1 = yp, l1 = rhs(r, y, yp);
            const double k2 = yp + 0.5 * dr * l1, l2 = rhs(r + 0.5 * dr, y + 0.5 * dr * k1, yp + 0.5 * dr * l1);
            const double k3 = yp + 0.5 * dr * l2, l3 = rhs(r + 0.5 * dr, y + 0.5 * dr * k2, yp + 0.5 * dr * l2);
            const double k4 = yp + dr * l3, l4 = rhs(r + dr, y + dr * k3, yp + dr * l3);
            y += dr * (k1 + 2 * k2 + 2 * k3 + k4) / 6.0;
            yp += dr * (l1 + 2 * l2 + 2 * l3 + l4) / 6.0;
            r += dr;
            if (out) {
                out->rho.push_back(r);
                out->f.push_back(y);
                out->fp.push_back(yp);
            }
            if (y > 1.0) return 1;
            if (yp < 0.0) return -1;
        }
        return 0;
    };
    double lo = 0.3, hi = 0.9;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (run(mid, nullptr) > 0 ? hi : lo) = mid;
    }
    Shooting s;
    s.a = 0.5 * (lo + hi);
    run(s.a, &s);
    return s;
}

double shooting_gamma(const Shooting& s, double R) {
    double e = 0.0;
    for (std::size_t i = 1; i < s.rho.size() && s.rho[i] <= R + 1e-9; ++i) {
        auto d = [&](std::size_t k) {
            const double r = s.rho[k], f = s.f[k], fp = s.fp[k];
            if (r == 0.0) return 0.0;
            return (fp * fp + f * f / (r * r) + 0.5 * (1 - f * f) * (1 - f * f)) * r;
        };
        e += 0.5 * (s.rho[i] - s.rho[i - 1]) * (d(i) + d(i - 1));
    }
    return std::numbers::pi * e - std::numbers::pi * std::log(R) - std::numbers::pi / (4 * R * R);
}

}  // namespace

TEST(RadialProfile, ShapeAndSlopeAtOrigin) {
    const RadialProfile& p = default_profile();
    const Shooting s = shoot(16.0, 1e-3);
    EXPECT_NEAR(p.derivative(0.0), s.a, 1e-5);
    EXPECT_DOUBLE_EQ(p(0.0), 0.0);
    double prev = 0.0;
    for (double r = 0.05; r < 39.0; r += 0.05) {
        const double f = p(r);
        ASSERT_GT(f, prev);
        ASSERT_LT(f, 1.0);
        prev = f;
    }
    for (double r : {1.0, 2.0, 4.0}) EXPECT_NEAR(p(r), s.f[static_cast<std::size_t>(std::lround(r / 1e-3))], 1e-7);
}

TEST(RadialProfile, AlgebraicTail) {
    const RadialProfile& p = default_profile();
    for (double r : {10.0, 15.0, 20.0}) EXPECT_NEAR((1.0 - p(r)) * 2.0 * r * r, 1.0, 0.05);
}

TEST(RadialProfile, PohozaevIdentity) {
    // ∫₀^∞ (1 − f²)² ρ dρ = 1 for the degree-one profile.
    const RadialProfile& p = default_profile();
    double s = 0.0;
    for (int i = 1; i < p.nodes(); ++i) {
        const double r0 = (i - 1) * p.dr, r1 = i * p.dr;
        const double a = (1 - p.f[i - 1] * p.f[i - 1]), b = (1 - p.f[i] * p.f[i]);
        s += 0.5 * p.dr * (a * a * r0 + b * b * r1);
    }
    EXPECT_NEAR(s, 1.0, 1e-3);
}

TEST(Gamma, AgreesWithShootingOracle) {
    const Shooting s = shoot(16.0, 5e-4);
    const double oracle = shooting_gamma(s, 12.0);
    EXPECT_NEAR(gamma_constant(default_profile()).gamma, oracle, 2e-4);
}

TEST(Gamma, StableAcrossDomainAndResolution) {
    const double g20 = gamma_constant(radial_profile(20001, 20.0)).gamma;
    const double g40 = gamma_constant(radial_profile(40001, 40.0)).gamma;
    const double g80 = gamma_constant(radial_profile(80001, 80.0)).gamma;
    EXPECT_LE(std::abs(g20 - g40) / std::abs(g40), 1e-3);
    EXPECT_LE(std::abs(g80 - g40) / std::abs(g40), 1e-3);
    const double fine = gamma_constant(radial_profile(80001, 40.0)).gamma;
    EXPECT_LE(std::abs(fine - g40), 1e-6);
}

TEST(Gamma, TruncatedUnitModulusCoreCostsMore) {
    // f ≡ 1 outside the core and linear inside is an admissible competitor;
    // its core energy exceeds the minimizer's.
    const RadialProfile& p = default_profile();
    std::vector<double> lin(p.f.size());
    for (std::size_t i = 0; i < lin.size(); ++i) lin[i] = std::min(1.0, i * p.dr);
    const double R = 20.0;
    EXPECT_GT(core_energy(lin, p.dr, R), core_energy(p.f, p.dr, R));
}

TEST(RadialProfile, CacheRoundTrip) {
    const auto dir = std::filesystem::temp_directory_path() / "glv_profile_test";
    std::filesystem::create_directories(dir);
    const RadialProfile p = radial_profile(2001, 20.0);
    save_profile(dir / "p.txt", p);
    const auto q = load_profile(dir / "p.txt");
    ASSERT_TRUE(q.has_value());
    ASSERT_EQ(q->nodes(), p.nodes());
    for (int i = 0; i < p.nodes(); i += 97) EXPECT_DOUBLE_EQ(q->f[i], p.f[i]);
    EXPECT_FALSE(load_profile(dir / "missing.txt").has_value());
    std::filesystem::remove_all(dir);
}

TEST(WellPrepared, DetectedAtTheConfiguredPoints) {
    const Grid g({0, 0}, {1, 1}, 161, 161);
    const auto s = EpsilonScaling::make(0.015, 1.0);
    const VortexConfiguration c{{{0.37, 0.52}, {0.66, 0.45}}, {1, -1}, 0.0};
    const ComplexField u = well_prepared(c, s, g, BoundaryCondition::neumann());
    const Detection d = detect_vortices(u, s.eps);
    ASSERT_EQ(d.config.size(), 2u);
    for (std::size_t k = 0; k < 2; ++k) {
        const std::size_t m = d.config.degrees[0] == c.degrees[k] ? 0 : 1;
        EXPECT_LE(distance(d.config.positions[m], c.positions[k]), g.h());
    }
    double mx = 0.0;
    for (const cplx& v : u.values) mx = std::max(mx, std::abs(v));
    EXPECT_LE(mx, 1.0);
}

TEST(WellPrepared, ModulusTailOutsideCores) {
    const Grid g({0, 0}, {1, 1}, 201, 201);
    const auto s = EpsilonScaling::make(0.02, 1.0);
    const Vec2 a{0.5, 0.5};
    const ComplexField u = well_prepared({{a}, {1}, 0.0}, s, g, BoundaryCondition::neumann());
    for (int j = 0; j < g.n2(); j += 3)
        for (int i = 0; i < g.n1(); i += 3) {
            const double rho = distance(g.node(i, j), a) / s.eps;
            if (rho < 8.0) continue;
            EXPECT_LE(1.0 - std::abs(u(i, j)), (1.0 + 3.0 / (rho * rho)) / (2 * rho * rho)) << rho;
        }
}

TEST(WellPrepared, JacobianMassMatchesProfile) {
    const Grid g({0, 0}, {1, 1}, 257, 257);
    const auto s = EpsilonScaling::make(0.02, 1.0);
    const Vec2 a{0.5, 0.5};
    const ComplexField u = well_prepared({{a}, {1}, 0.0}, s, g, BoundaryCondition::neumann());
    const double R = 0.2;
    const double f = default_profile()(R / s.eps);
    const double mass = integrate(jacobian(u), Region::ball(a, R));
    EXPECT_NEAR(mass, std::numbers::pi * f * f, 0.02 * std::numbers::pi);
    EXPECT_NEAR(integrate(jacobian(u)), std::numbers::pi, 0.02 * std::numbers::pi);
}

TEST(WellPrepared, SmallEnergyExcess) {
    const Grid g({0, 0}, {3, 3}, 301, 301);
    const double gamma = core_energy_limit(default_profile());
    for (double eps : {0.06, 0.04}) {
        const auto s = EpsilonScaling::make(eps, 1.0);
        const VortexConfiguration c{{{0.9, 1.4}, {2.1, 1.6}}, {1, -1}, 0.0};
        const ComplexField u = well_prepared(c, s, g, BoundaryCondition::neumann());
        const ExcessReport r = energy_excess(u, c, s, gamma, BoundaryCondition::neumann());
        EXPECT_LT(std::abs(r.excess), 0.05) << "eps=" << eps;
        EXPECT_TRUE(r.well_prepared);
    }
}

TEST(WellPrepared, DegreeFlipConjugates) {
    const Grid g({0, 0}, {1, 1}, 129, 129);
    const auto s = EpsilonScaling::make(0.015, 1.0);
    const VortexConfiguration c{{{0.37, 0.52}, {0.66, 0.45}}, {1, 1}, 0.0};
    const VortexConfiguration f{c.positions, {-1, -1}, 0.0};
    const ComplexField a = well_prepared(c, s, g, BoundaryCondition::neumann());
    const ComplexField b = well_prepared(f, s, g, BoundaryCondition::neumann());
    double worst = 0.0;
    for (std::size_t n = 0; n < a.values.size(); ++n) worst = std::max(worst, std::abs(a.values[n] - std::conj(b.values[n])));
    EXPECT_LT(worst, 1e-9);
}

TEST(WellPrepared, DirichletPhaseIsGaugeCovariant) {
    const Grid g({0, 0}, {1, 1}, 129, 129);
    const auto s = EpsilonScaling::make(0.04, 1.0);
    const VortexConfiguration c{{{0.45, 0.55}}, {1}, 0.0};
    const double alpha = 0.7;
    const ComplexField a = well_prepared(c, s, g, BoundaryCondition::dirichlet(c, 0.0));
    const ComplexField b = well_prepared(c, s, g, BoundaryCondition::dirichlet(c, alpha));
    const cplx rot = std::polar(1.0, alpha);
    double worst = 0.0;
    for (std::size_t n = 0; n < a.values.size(); ++n) worst = std::max(worst, std::abs(rot * a.values[n] - b.values[n]));
    EXPECT_LT(worst, 1e-9);
    EXPECT_EQ(boundary_winding(b), 1);
}

TEST(WellPrepared, RejectsUnresolvedOrCrowdedCores) {
    const Grid g({0, 0}, {1, 1}, 129, 129);
    EXPECT_THROW(well_prepared({{{0.5, 0.5}}, {1}, 0.0}, EpsilonScaling::make(0.08, 1.0), g,
                               BoundaryCondition::neumann()),
                 ConfigTooTight);
    EXPECT_THROW(well_prepared({{{0.45, 0.5}, {0.55, 0.5}}, {1, -1}, 0.0}, EpsilonScaling::make(0.02, 1.0), g,
                               BoundaryCondition::neumann()),
                 ConfigTooTight);
}
