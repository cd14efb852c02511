#include "glv/test_functions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace glv {

namespace {

// e^{-1/t} and its derivatives, zero for t ≤ 0.
struct ExpPiece {
    double v, d1, d2;
};
ExpPiece exp_piece(double t) {
    if (t <= 0.0) return {0.0, 0.0, 0.0};
    const double e = std::exp(-1.0 / t);
    const double t2 = t * t;
    const double d1 = e / t2;
    const double d2 = e * (1.0 - 2.0 * t) / (t2 * t2);
    return {e, d1, d2};
}

}  // namespace

double smooth_step(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double a = exp_piece(t).v;
    const double b = exp_piece(1.0 - t).v;
    return a / (a + b);
}

double smooth_step_d1(double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    const auto a = exp_piece(t);
    const auto b = exp_piece(1.0 - t);
    const double s = a.v + b.v;
    // d/dt [a/(a+b)] with b' = -b1
    return (a.d1 * s - a.v * (a.d1 - b.d1)) / (s * s);
}

double smooth_step_d2(double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    const auto a = exp_piece(t);
    const auto b = exp_piece(1.0 - t);
    const double s = a.v + b.v;
    const double s1 = a.d1 - b.d1;
    const double s2 = a.d2 + b.d2;
    // f = a/s; f' = (a' s - a s')/s²; f'' = (a'' s - a s'')/s² - 2 s' f'/s
    const double f1 = (a.d1 * s - a.v * s1) / (s * s);
    return (a.d2 * s - a.v * s2) / (s * s) - 2.0 * s1 * f1 / s;
}

Jet multiply(const Jet& a, const Jet& b) {
    Jet r;
    r.value = a.value * b.value;
    r.grad = a.value * b.grad + b.value * a.grad;
    r.hess.xx = a.hess.xx * b.value + 2.0 * a.grad.x * b.grad.x + a.value * b.hess.xx;
    r.hess.yy = a.hess.yy * b.value + 2.0 * a.grad.y * b.grad.y + a.value * b.hess.yy;
    r.hess.xy = a.hess.xy * b.value + a.grad.x * b.grad.y + a.grad.y * b.grad.x +
                a.value * b.hess.xy;
    r.hess.yx = r.hess.xy;
    return r;
}

Jet radial_cutoff(Vec2 x, Vec2 center, double inner, double outer) {
    const Vec2 d = x - center;
    const double r = norm(d);
    Jet j;
    if (r <= inner) {
        j.value = 1.0;
        return j;
    }
    if (r >= outer) return j;
    const double w = outer - inner;
    const double t = (outer - r) / w;  // 1 at inner, 0 at outer
    const double s = smooth_step(t);
    const double s1 = -smooth_step_d1(t) / w;  // d/dr
    const double s2 = smooth_step_d2(t) / (w * w);
    j.value = s;
    const Vec2 e = d / r;
    j.grad = s1 * e;
    // Hessian of radial function: s'' e⊗e + (s'/r)(I − e⊗e)
    j.hess.xx = s2 * e.x * e.x + s1 / r * (1.0 - e.x * e.x);
    j.hess.yy = s2 * e.y * e.y + s1 / r * (1.0 - e.y * e.y);
    j.hess.xy = s2 * e.x * e.y - s1 / r * e.x * e.y;
    j.hess.yx = j.hess.xy;
    return j;
}

namespace {

// 1D plateau along one axis: value, d1, d2.
ExpPiece plateau_1d(double s, double lo, double hi, double margin, double width) {
    const double tl = (s - lo - margin) / width;
    const double th = (hi - margin - s) / width;
    const double a = smooth_step(tl), a1 = smooth_step_d1(tl) / width,
                 a2 = smooth_step_d2(tl) / (width * width);
    const double b = smooth_step(th), b1 = -smooth_step_d1(th) / width,
                 b2 = smooth_step_d2(th) / (width * width);
    return {a * b, a1 * b + a * b1, a2 * b + 2.0 * a1 * b1 + a * b2};
}

}  // namespace

Jet plateau_cutoff(Vec2 x, Vec2 lo, Vec2 hi, double margin, double width) {
    const auto px = plateau_1d(x.x, lo.x, hi.x, margin, width);
    const auto py = plateau_1d(x.y, lo.y, hi.y, margin, width);
    Jet j;
    j.value = px.v * py.v;
    j.grad = {px.d1 * py.v, px.v * py.d1};
    j.hess.xx = px.d2 * py.v;
    j.hess.yy = px.v * py.d2;
    j.hess.xy = j.hess.yx = px.d1 * py.d1;
    return j;
}

ScalarTest affine_bump(Vec2 x0, double c, Vec2 g, double inner, double outer) {
    return [=](Vec2 x, double) {
        Jet affine;
        affine.value = c + dot(g, x - x0);
        affine.grad = g;
        return multiply(affine, radial_cutoff(x, x0, inner, outer));
    };
}

double Region::coverage(Vec2 p, double h) const {
    switch (kind) {
        case Kind::Whole:
            return 1.0;
        case Kind::Box: {
            const double ox = std::clamp(std::min(p.x + 0.5 * h, hi.x) - std::max(p.x - 0.5 * h, lo.x), 0.0, h);
            const double oy = std::clamp(std::min(p.y + 0.5 * h, hi.y) - std::max(p.y - 0.5 * h, lo.y), 0.0, h);
            return ox * oy / (h * h);
        }
        case Kind::Ball: {
            const double d = distance(p, center);
            const double half_diag = 0.7072 * h;
            if (d + half_diag <= radius) return 1.0;
            if (d - half_diag >= radius) return 0.0;
            constexpr int m = 8;
            int inside = 0;
            for (int a = 0; a < m; ++a) {
                for (int b = 0; b < m; ++b) {
                    const Vec2 q{p.x + ((a + 0.5) / m - 0.5) * h, p.y + ((b + 0.5) / m - 0.5) * h};
                    if (distance(q, center) <= radius) ++inside;
                }
            }
            return static_cast<double>(inside) / (m * m);
        }
    }
    return 0.0;
}

std::vector<NamedScalarTest> scalar_test_bank(Vec2 lo, Vec2 hi) {
    const Vec2 mid = 0.5 * (lo + hi);
    const double L = std::min(hi.x - lo.x, hi.y - lo.y);
    const double margin = 0.05 * L;
    const double width = 0.2 * L;
    std::vector<NamedScalarTest> bank;
    bank.push_back({"affine_plateau", [=](Vec2 x, double) {
                        Jet a;
                        a.value = 1.0 + (x.x - mid.x) / L - 0.5 * (x.y - mid.y) / L;
                        a.grad = {1.0 / L, -0.5 / L};
                        return multiply(a, plateau_cutoff(x, lo, hi, margin, width));
                    }});
    bank.push_back({"quadratic_plateau", [=](Vec2 x, double t) {
                        const double u = (x.x - mid.x) / L, v = (x.y - mid.y) / L;
                        Jet q;
                        q.value = u * u - v * v + u * v + 0.1 * t;
                        q.grad = {(2.0 * u + v) / L, (u - 2.0 * v) / L};
                        q.hess.xx = 2.0 / (L * L);
                        q.hess.yy = -2.0 / (L * L);
                        q.hess.xy = q.hess.yx = 1.0 / (L * L);
                        return multiply(q, plateau_cutoff(x, lo, hi, margin, width));
                    }});
    bank.push_back({"sine_mode", [=](Vec2 x, double t) {
                        const double kx = std::numbers::pi / (hi.x - lo.x);
                        const double ky = std::numbers::pi / (hi.y - lo.y);
                        const double sx = std::sin(kx * (x.x - lo.x)), cx = std::cos(kx * (x.x - lo.x));
                        const double sy = std::sin(2.0 * ky * (x.y - lo.y)),
                                     cy = std::cos(2.0 * ky * (x.y - lo.y));
                        const double a = 1.0 + 0.5 * t;
                        Jet s;
                        s.value = a * sx * sy;
                        s.grad = {a * kx * cx * sy, a * 2.0 * ky * sx * cy};
                        s.hess.xx = -a * kx * kx * sx * sy;
                        s.hess.yy = -a * 4.0 * ky * ky * sx * sy;
                        s.hess.xy = s.hess.yx = a * 2.0 * kx * ky * cx * cy;
                        return s;
                    }});
    return bank;
}

std::vector<NamedVectorTest> vector_test_bank(Vec2 lo, Vec2 hi) {
    const Vec2 mid = 0.5 * (lo + hi);
    const double L = std::min(hi.x - lo.x, hi.y - lo.y);
    const double margin = 0.05 * L;
    const double width = 0.2 * L;
    std::vector<NamedVectorTest> bank;
    bank.push_back({"constant_plateau", [=](Vec2 x, double) {
                        return plateau_cutoff(x, lo, hi, margin, width).value * Vec2{1.0, 0.5};
                    }});
    bank.push_back({"affine_plateau", [=](Vec2 x, double) {
                        const Vec2 d = (x - mid) / L;
                        return plateau_cutoff(x, lo, hi, margin, width).value *
                               Vec2{0.3 + d.x + 0.5 * d.y, -0.2 + 0.7 * d.x - d.y};
                    }});
    bank.push_back({"rotation_plateau", [=](Vec2 x, double) {
                        return plateau_cutoff(x, lo, hi, margin, width).value * rot90((x - mid) / L);
                    }});
    return bank;
}

}  // namespace glv
