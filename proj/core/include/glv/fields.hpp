#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "glv/geometry.hpp"

namespace glv {

using cplx = std::complex<double>;

inline Vec2 as_vec(cplx z) { return {z.real(), z.imag()}; }
inline cplx as_cplx(Vec2 v) { return {v.x, v.y}; }
/// Real scalar product of complex numbers viewed as vectors.
inline double rdot(cplx a, cplx b) { return a.real() * b.real() + a.imag() * b.imag(); }
/// u × v = u¹v² − u²v¹.
inline double rcross(cplx a, cplx b) { return a.real() * b.imag() - a.imag() * b.real(); }

/// Uniform node grid on an axis-aligned rectangle. Nodes are indexed (i, j)
/// with i along x; storage is row-major in j (index = j·n1 + i).
class Grid {
public:
    Grid() = default;
    /// Throws ConfigError if n1, n2 < 16, the extent is not positive, or the
    /// two spacings differ by more than 1e-12 relative.
    Grid(Vec2 origin, Vec2 extent, int n1, int n2);

    static Grid unit_square(int n) { return Grid({0.0, 0.0}, {1.0, 1.0}, n, n); }

    [[nodiscard]] Vec2 origin() const { return origin_; }
    [[nodiscard]] Vec2 extent() const { return extent_; }
    [[nodiscard]] int n1() const { return n1_; }
    [[nodiscard]] int n2() const { return n2_; }
    [[nodiscard]] double h() const { return h_; }
    [[nodiscard]] std::size_t size() const { return static_cast<std::size_t>(n1_) * n2_; }
    [[nodiscard]] std::size_t cell_count() const {
        return static_cast<std::size_t>(n1_ - 1) * (n2_ - 1);
    }

    [[nodiscard]] std::size_t index(int i, int j) const {
        return static_cast<std::size_t>(j) * n1_ + i;
    }
    [[nodiscard]] std::size_t cell_index(int i, int j) const {
        return static_cast<std::size_t>(j) * (n1_ - 1) + i;
    }
    [[nodiscard]] double x(int i) const { return origin_.x + i * h_; }
    [[nodiscard]] double y(int j) const { return origin_.y + j * h_; }
    [[nodiscard]] Vec2 node(int i, int j) const { return {x(i), y(j)}; }
    [[nodiscard]] Vec2 cell_center(int i, int j) const {
        return {x(i) + 0.5 * h_, y(j) + 0.5 * h_};
    }
    [[nodiscard]] bool is_boundary(int i, int j) const {
        return i == 0 || j == 0 || i == n1_ - 1 || j == n2_ - 1;
    }
    /// Nodes whose index distance to the boundary is below `width`.
    [[nodiscard]] bool in_collar(int i, int j, int width) const {
        return i < width || j < width || i > n1_ - 1 - width || j > n2_ - 1 - width;
    }
    /// Trapezoidal quadrature weight of node (i, j), including h².
    [[nodiscard]] double trapezoid_weight(int i, int j) const {
        const double wx = (i == 0 || i == n1_ - 1) ? 0.5 : 1.0;
        const double wy = (j == 0 || j == n2_ - 1) ? 0.5 : 1.0;
        return wx * wy * h_ * h_;
    }
    [[nodiscard]] double distance_to_boundary(Vec2 p) const;
    [[nodiscard]] bool contains(Vec2 p) const;

    friend bool operator==(const Grid& a, const Grid& b) {
        return a.n1_ == b.n1_ && a.n2_ == b.n2_ && a.origin_ == b.origin_ &&
               a.extent_ == b.extent_;
    }

private:
    Vec2 origin_{};
    Vec2 extent_{1.0, 1.0};
    int n1_ = 0;
    int n2_ = 0;
    double h_ = 0.0;
};

/// Throws GridMismatch if the two grids differ.
void require_same_grid(const Grid& a, const Grid& b, const char* what);

enum class Centering { Node, Cell };

/// The discrete complex order parameter.
struct ComplexField {
    Grid grid;
    std::vector<cplx> values;
    double time = 0.0;

    ComplexField() = default;
    explicit ComplexField(const Grid& g, cplx fill = {0.0, 0.0}, double t = 0.0)
        : grid(g), values(g.size(), fill), time(t) {}

    cplx& operator()(int i, int j) { return values[grid.index(i, j)]; }
    [[nodiscard]] cplx operator()(int i, int j) const { return values[grid.index(i, j)]; }
    [[nodiscard]] bool all_finite() const;
};

template <class T>
struct GridFunction {
    Grid grid;
    Centering centering = Centering::Node;
    std::vector<T> values;

    GridFunction() = default;
    GridFunction(const Grid& g, Centering c, T fill = T{})
        : grid(g), centering(c), values(c == Centering::Node ? g.size() : g.cell_count(), fill) {}

    [[nodiscard]] int nx() const { return centering == Centering::Node ? grid.n1() : grid.n1() - 1; }
    [[nodiscard]] int ny() const { return centering == Centering::Node ? grid.n2() : grid.n2() - 1; }
    T& operator()(int i, int j) { return values[static_cast<std::size_t>(j) * nx() + i]; }
    [[nodiscard]] const T& operator()(int i, int j) const {
        return values[static_cast<std::size_t>(j) * nx() + i];
    }
    [[nodiscard]] Vec2 point(int i, int j) const {
        return centering == Centering::Node ? grid.node(i, j) : grid.cell_center(i, j);
    }
};

using ScalarField = GridFunction<double>;
using VectorField = GridFunction<Vec2>;
using TensorField = GridFunction<Mat2>;

/// ε together with the derived factors k_ε = 1/log(1/ε) and λ_ε = λ₀·k_ε.
struct EpsilonScaling {
    double eps = 0.0;
    double k_eps = 0.0;
    double lambda0 = 0.0;
    double lambda_eps = 0.0;

    /// Throws ConfigError unless 0 < ε < 1 and λ₀ > 0.
    static EpsilonScaling make(double eps, double lambda0);
    [[nodiscard]] double log_inv_eps() const { return 1.0 / k_eps; }
};

}  // namespace glv
