#pragma once

// Independent reference computations used by the tests.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "glv/geometry.hpp"

namespace glv::oracle {

using cd = std::complex<double>;

/// Jacobi θ₁(z | q) by its q-series.
inline cd theta1(cd z, double q) {
    cd s{};
    for (int n = 0; n < 40; ++n) {
        const double c = std::pow(q, (n + 0.5) * (n + 0.5));
        if (c == 0.0) break;
        s += (n % 2 == 0 ? 2.0 : -2.0) * c * std::sin(static_cast<double>(2 * n + 1) * z);
    }
    return s;
}

inline double theta1_prime0(double q) {
    double s = 0.0;
    for (int n = 0; n < 40; ++n) s += (n % 2 == 0 ? 2.0 : -2.0) * (2 * n + 1) * std::pow(q, (n + 0.5) * (n + 0.5));
    return s;
}

/// Dirichlet Green function of Δ on [0, a] × [0, b], G ≈ log|z − ζ|/(2π).
struct RectangleGreen {
    double a, b, q;
    RectangleGreen(double a_, double b_) : a(a_), b(b_), q(std::exp(-std::numbers::pi * b_ / a_)) {}

    [[nodiscard]] double operator()(Vec2 x, Vec2 y) const {
        const cd z(x.x, x.y), w(y.x, y.y);
        const double k = std::numbers::pi / (2.0 * a);
        const cd num = theta1(k * (z - w), q) * theta1(k * (z + w), q);
        const cd den = theta1(k * (z - std::conj(w)), q) * theta1(k * (z + std::conj(w)), q);
        return std::log(std::abs(num / den)) / (2.0 * std::numbers::pi);
    }
    /// lim_{x→y} 2πG(x, y) − log|x − y|.
    [[nodiscard]] double regular(Vec2 y) const {
        const cd w(y.x, y.y);
        const double k = std::numbers::pi / (2.0 * a);
        const double c = std::log(std::numbers::pi * theta1_prime0(q) / (2.0 * a));
        const cd rest = theta1(2.0 * k * w, q) /
                        (theta1(k * (w - std::conj(w)), q) * theta1(k * (w + std::conj(w)), q));
        return c + std::log(std::abs(rest));
    }
};

/// Renormalized energy of the Neumann-case harmonic map on [0, a] × [0, b]
/// from the Green function: W = −2π² Σ_{j≠k} dⱼdₖ G(aⱼ, aₖ) − π Σ H(aₖ).
inline double neumann_W(double a, double b, const std::vector<Vec2>& pos, const std::vector<int>& deg) {
    const RectangleGreen g(a, b);
    double w = 0.0;
    for (std::size_t k = 0; k < pos.size(); ++k) {
        w -= std::numbers::pi * g.regular(pos[k]);
        for (std::size_t j = 0; j < pos.size(); ++j)
            if (j != k) w -= 2.0 * std::numbers::pi * std::numbers::pi * deg[j] * deg[k] * g(pos[j], pos[k]);
    }
    return w;
}

/// Renormalized energy from the excised-disk integral ½∫_{D∖∪B_r}|∇ψ|² − πN log(1/r),
/// with ψ = 2π Σ dₖ G(·, aₖ). Integration by parts leaves ½∮ψ ∂_νψ over the
/// circles (ψ = 0 on ∂D), evaluated with the periodic trapezoid rule; the
/// radial derivative is a centered difference. The error is O(r² log r).
inline double annulus_W(double a, double b, const std::vector<Vec2>& pos, const std::vector<int>& deg, double r,
                        int m = 256) {
    const RectangleGreen g(a, b);
    auto psi = [&](Vec2 x) {
        double s = 0.0;
        for (std::size_t k = 0; k < pos.size(); ++k) s += 2.0 * std::numbers::pi * deg[k] * g(x, pos[k]);
        return s;
    };
    const double dr = 1e-4 * r;
    double total = 0.0;
    for (std::size_t k = 0; k < pos.size(); ++k) {
        double s = 0.0;
        for (int i = 0; i < m; ++i) {
            const double th = 2.0 * std::numbers::pi * i / m;
            const Vec2 e{std::cos(th), std::sin(th)};
            const double dpsi = (psi(pos[k] + (r + dr) * e) - psi(pos[k] + (r - dr) * e)) / (2.0 * dr);
            s += psi(pos[k] + r * e) * (-dpsi) * r;
        }
        total += 0.5 * s * 2.0 * std::numbers::pi / m;
    }
    return total - std::numbers::pi * static_cast<double>(pos.size()) * std::log(1.0 / r);
}

}  // namespace glv::oracle
