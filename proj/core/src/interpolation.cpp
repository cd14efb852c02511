#include "glv/interpolation.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "glv/errors.hpp"

namespace glv {

namespace {

constexpr int kPoints = 6;

struct Stencil1D {
    int start = 0;
    std::array<double, kPoints> w{};   // basis values
    std::array<double, kPoints> dw{};  // basis derivatives (per unit length)
};

Stencil1D stencil(double s, int n, double h) {
    // s: position in index units
    Stencil1D st;
    int base = static_cast<int>(std::floor(s)) - kPoints / 2 + 1;
    st.start = std::clamp(base, 0, n - kPoints);
    for (int a = 0; a < kPoints; ++a) {
        const double xa = st.start + a;
        double value = 1.0;
        double deriv = 0.0;
        for (int b = 0; b < kPoints; ++b) {
            if (b == a) continue;
            const double xb = st.start + b;
            double term = 1.0 / (xa - xb);
            for (int c = 0; c < kPoints; ++c) {
                if (c == a || c == b) continue;
                term *= (s - (st.start + c)) / (xa - (st.start + c));
            }
            deriv += term;
            value *= (s - xb) / (xa - xb);
        }
        st.w[a] = value;
        st.dw[a] = deriv / h;
    }
    return st;
}

}  // namespace

double interpolate(const ScalarField& f, Vec2 p) {
    if (f.centering != Centering::Node) throw GridMismatch("interpolate: node field required");
    const Grid& g = f.grid;
    const auto sx = stencil((p.x - g.origin().x) / g.h(), g.n1(), g.h());
    const auto sy = stencil((p.y - g.origin().y) / g.h(), g.n2(), g.h());
    double v = 0.0;
    for (int b = 0; b < kPoints; ++b) {
        double row = 0.0;
        for (int a = 0; a < kPoints; ++a) row += sx.w[a] * f(sx.start + a, sy.start + b);
        v += sy.w[b] * row;
    }
    return v;
}

Vec2 interpolate_gradient(const ScalarField& f, Vec2 p) {
    if (f.centering != Centering::Node) throw GridMismatch("interpolate: node field required");
    const Grid& g = f.grid;
    const auto sx = stencil((p.x - g.origin().x) / g.h(), g.n1(), g.h());
    const auto sy = stencil((p.y - g.origin().y) / g.h(), g.n2(), g.h());
    Vec2 d{};
    for (int b = 0; b < kPoints; ++b) {
        for (int a = 0; a < kPoints; ++a) {
            const double v = f(sx.start + a, sy.start + b);
            d.x += sx.dw[a] * sy.w[b] * v;
            d.y += sx.w[a] * sy.dw[b] * v;
        }
    }
    return d;
}

}  // namespace glv
