#pragma once

#include <cmath>
#include <cstddef>

namespace glv {

/// Point or vector in the plane. Complex numbers viewed as vectors use the same
/// type; `rot90` is multiplication by i.
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
    constexpr Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
    constexpr Vec2& operator*=(double s) { x *= s; y *= s; return *this; }
    friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
    friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
    friend constexpr Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
    friend constexpr Vec2 operator/(Vec2 a, double s) { return {a.x / s, a.y / s}; }
    friend constexpr bool operator==(Vec2 a, Vec2 b) = default;
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
/// a × b = a¹b² − a²b¹.
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
/// Rotation by π/2: i(u¹, u²) = (−u², u¹).
constexpr Vec2 rot90(Vec2 a) { return {-a.y, a.x}; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }

/// Symmetric-or-not 2×2 matrix, row-major.
struct Mat2 {
    double xx = 0.0, xy = 0.0, yx = 0.0, yy = 0.0;
};

inline double frobenius(const Mat2& m) {
    return std::sqrt(m.xx * m.xx + m.xy * m.xy + m.yx * m.yx + m.yy * m.yy);
}
/// Frobenius product A:B.
constexpr double frobenius_product(const Mat2& a, const Mat2& b) {
    return a.xx * b.xx + a.xy * b.xy + a.yx * b.yx + a.yy * b.yy;
}
/// Row vector times matrix: (v·M)_k = Σ_j v_j M_jk.
constexpr Vec2 left_multiply(Vec2 v, const Mat2& m) {
    return {v.x * m.xx + v.y * m.yx, v.x * m.xy + v.y * m.yy};
}

}  // namespace glv
