#pragma once

#include <functional>
#include <string>
#include <vector>

#include "glv/geometry.hpp"

namespace glv {

/// C∞ transition: 0 for t ≤ 0, 1 for t ≥ 1.
double smooth_step(double t);
/// First and second derivatives of smooth_step.
double smooth_step_d1(double t);
double smooth_step_d2(double t);

/// Value, gradient and Hessian of a scalar function at a point.
struct Jet {
    double value = 0.0;
    Vec2 grad{};
    Mat2 hess{};
};

/// Scalar test function φ(x, t) with analytic first and second derivatives.
using ScalarTest = std::function<Jet(Vec2, double)>;
/// Vector test field w(x, t).
using VectorTest = std::function<Vec2(Vec2, double)>;

/// Radial cutoff: 1 for r ≤ inner, 0 for r ≥ outer, C∞ in between.
Jet radial_cutoff(Vec2 x, Vec2 center, double inner, double outer);
/// Plateau on a rectangle: 1 at distance ≥ margin + width from every side,
/// 0 within `margin` of the boundary.
Jet plateau_cutoff(Vec2 x, Vec2 lo, Vec2 hi, double margin, double width);

/// Product rule for jets.
Jet multiply(const Jet& a, const Jet& b);

/// Affine function c + g·(x − x0), times a radial cutoff around x0.
ScalarTest affine_bump(Vec2 x0, double c, Vec2 g, double inner, double outer);

/// Integration region for dual pairings. Ball edges are resolved by
/// sub-sampling each node's dual cell.
struct Region {
    enum class Kind { Whole, Box, Ball };
    Kind kind = Kind::Whole;
    Vec2 lo{}, hi{};      // Box
    Vec2 center{};        // Ball
    double radius = 0.0;  // Ball

    static Region whole() { return {}; }
    static Region box(Vec2 lo, Vec2 hi) {
        Region r;
        r.kind = Kind::Box;
        r.lo = lo;
        r.hi = hi;
        return r;
    }
    static Region ball(Vec2 c, double radius) {
        Region r;
        r.kind = Kind::Ball;
        r.center = c;
        r.radius = radius;
        return r;
    }
    /// Fraction of the h×h square centred at p that lies in the region.
    [[nodiscard]] double coverage(Vec2 p, double h) const;
};

/// A named family member of the fixed test-function bank.
struct NamedScalarTest {
    std::string name;
    ScalarTest fn;
};
struct NamedVectorTest {
    std::string name;
    VectorTest fn;
};

/// Three scalar functions of (x, t) that vanish on the boundary of
/// [lo, hi]: affine×plateau, quadratic×plateau, and a slowly rotating
/// sine mode. Used for weak-norm proxies.
std::vector<NamedScalarTest> scalar_test_bank(Vec2 lo, Vec2 hi);
/// Three smooth vector fields: constant×plateau, affine×plateau and a
/// rigid rotation×plateau.
std::vector<NamedVectorTest> vector_test_bank(Vec2 lo, Vec2 hi);

}  // namespace glv
