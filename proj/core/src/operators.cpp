#include "glv/operators.hpp"

#include "glv/errors.hpp"

namespace glv {

namespace {

void require_finite(const ComplexField& u, const char* what) {
    if (!u.all_finite()) throw NonFinite(std::string(what) + ": non-finite input field");
}

template <class T, class Get>
T diff_at(Get get, int k, int n, double h) {
    if (k == 0) return (-3.0 * get(0) + 4.0 * get(1) - get(2)) / (2.0 * h);
    if (k == n - 1) return (3.0 * get(n - 1) - 4.0 * get(n - 2) + get(n - 3)) / (2.0 * h);
    return (get(k + 1) - get(k - 1)) / (2.0 * h);
}

template <class T, class Field>
std::vector<T> node_derivative(const Grid& g, const Field& f, int axis) {
    const int n1 = g.n1(), n2 = g.n2();
    const double h = g.h();
    std::vector<T> out(g.size());
    for (int j = 0; j < n2; ++j) {
        for (int i = 0; i < n1; ++i) {
            if (axis == 0) {
                out[g.index(i, j)] = diff_at<T>([&](int m) { return f(m, j); }, i, n1, h);
            } else {
                out[g.index(i, j)] = diff_at<T>([&](int m) { return f(i, m); }, j, n2, h);
            }
        }
    }
    return out;
}

double region_weight(const Region& region, Vec2 p, double base, double h) {
    if (region.kind == Region::Kind::Whole) return base;
    return base * region.coverage(p, h);
}

template <class Field>
double weight_at(const Field& f, int i, int j, const Region& region) {
    const Grid& g = f.grid;
    const double base = f.centering == Centering::Node ? g.trapezoid_weight(i, j) : g.h() * g.h();
    return region_weight(region, f.point(i, j), base, g.h());
}

}  // namespace

std::vector<cplx> derivative(const ComplexField& u, int axis) {
    return node_derivative<cplx>(u.grid, u, axis);
}

ScalarField derivative(const ScalarField& f, int axis) {
    if (f.centering != Centering::Node) throw GridMismatch("derivative: node field required");
    ScalarField out(f.grid, Centering::Node);
    out.values = node_derivative<double>(f.grid, f, axis);
    return out;
}

VectorField current(const ComplexField& u) {
    require_finite(u, "current");
    const auto d1 = derivative(u, 0);
    const auto d2 = derivative(u, 1);
    VectorField j(u.grid, Centering::Node);
    for (std::size_t n = 0; n < u.values.size(); ++n) {
        j.values[n] = {rcross(u.values[n], d1[n]), rcross(u.values[n], d2[n])};
    }
    return j;
}

ScalarField curl(const VectorField& v) {
    if (v.centering != Centering::Node) throw GridMismatch("curl: node field required");
    const Grid& g = v.grid;
    const double h = g.h();
    ScalarField c(g, Centering::Cell);
    for (int j = 0; j < g.n2() - 1; ++j) {
        for (int i = 0; i < g.n1() - 1; ++i) {
            const double bottom = 0.5 * (v(i, j).x + v(i + 1, j).x);
            const double right = 0.5 * (v(i + 1, j).y + v(i + 1, j + 1).y);
            const double top = 0.5 * (v(i, j + 1).x + v(i + 1, j + 1).x);
            const double left = 0.5 * (v(i, j).y + v(i, j + 1).y);
            c(i, j) = (bottom + right - top - left) / h;
        }
    }
    return c;
}

ScalarField jacobian(const ComplexField& u) {
    ScalarField c = curl(current(u));
    for (double& x : c.values) x *= 0.5;
    return c;
}

ScalarField jacobian_nodes(const ComplexField& u) {
    require_finite(u, "jacobian_nodes");
    const auto d1 = derivative(u, 0);
    const auto d2 = derivative(u, 1);
    ScalarField out(u.grid, Centering::Node);
    for (std::size_t n = 0; n < d1.size(); ++n) out.values[n] = rcross(d1[n], d2[n]);
    return out;
}

VectorField jacobian_velocity(const ComplexField& u, const ComplexField& u_t) {
    require_same_grid(u.grid, u_t.grid, "jacobian_velocity");
    require_finite(u_t, "jacobian_velocity");
    const auto d1 = derivative(u, 0);
    const auto d2 = derivative(u, 1);
    VectorField v(u.grid, Centering::Node);
    for (std::size_t n = 0; n < d1.size(); ++n) {
        v.values[n] = {rcross(u_t.values[n], d1[n]), rcross(u_t.values[n], d2[n])};
    }
    return v;
}

VectorField momentum(const ComplexField& u, const ComplexField& u_t) {
    require_same_grid(u.grid, u_t.grid, "momentum");
    const auto d1 = derivative(u, 0);
    const auto d2 = derivative(u, 1);
    VectorField p(u.grid, Centering::Node);
    for (std::size_t n = 0; n < d1.size(); ++n) {
        p.values[n] = {rdot(u_t.values[n], d1[n]), rdot(u_t.values[n], d2[n])};
    }
    return p;
}

TensorField stress(const ComplexField& u) {
    const auto d1 = derivative(u, 0);
    const auto d2 = derivative(u, 1);
    TensorField t(u.grid, Centering::Node);
    for (std::size_t n = 0; n < d1.size(); ++n) {
        const double off = rdot(d1[n], d2[n]);
        t.values[n] = {std::norm(d1[n]), off, off, std::norm(d2[n])};
    }
    return t;
}

ScalarField energy_density(const ComplexField& u, const EpsilonScaling& scaling) {
    const Grid& g = u.grid;
    const int n1 = g.n1(), n2 = g.n2();
    const double h2 = g.h() * g.h();
    const double inv4e2 = 1.0 / (4.0 * scaling.eps * scaling.eps);
    ScalarField e(g, Centering::Node);
    auto edge_mean = [](double lo, double hi, bool has_lo, bool has_hi) {
        if (has_lo && has_hi) return 0.5 * (lo + hi);
        return has_lo ? lo : hi;
    };
    for (int j = 0; j < n2; ++j) {
        for (int i = 0; i < n1; ++i) {
            const cplx c = u(i, j);
            const double ex_lo = i > 0 ? std::norm(c - u(i - 1, j)) : 0.0;
            const double ex_hi = i < n1 - 1 ? std::norm(u(i + 1, j) - c) : 0.0;
            const double ey_lo = j > 0 ? std::norm(c - u(i, j - 1)) : 0.0;
            const double ey_hi = j < n2 - 1 ? std::norm(u(i, j + 1) - c) : 0.0;
            const double gx = edge_mean(ex_lo, ex_hi, i > 0, i < n1 - 1);
            const double gy = edge_mean(ey_lo, ey_hi, j > 0, j < n2 - 1);
            const double pot = 1.0 - std::norm(c);
            e(i, j) = 0.5 * (gx + gy) / h2 + pot * pot * inv4e2;
        }
    }
    return e;
}

double total_energy(const ComplexField& u, const EpsilonScaling& scaling) {
    return integrate(energy_density(u, scaling));
}

ScalarField cell_to_node(const ScalarField& f) {
    if (f.centering != Centering::Cell) throw GridMismatch("cell_to_node: cell field required");
    const Grid& g = f.grid;
    ScalarField out(g, Centering::Node);
    for (int j = 0; j < g.n2(); ++j) {
        for (int i = 0; i < g.n1(); ++i) {
            double sum = 0.0;
            int count = 0;
            for (int b = j - 1; b <= j; ++b) {
                for (int a = i - 1; a <= i; ++a) {
                    if (a < 0 || b < 0 || a >= g.n1() - 1 || b >= g.n2() - 1) continue;
                    sum += f(a, b);
                    ++count;
                }
            }
            out(i, j) = sum / count;
        }
    }
    return out;
}

ScalarField node_to_cell(const ScalarField& f) {
    if (f.centering != Centering::Node) throw GridMismatch("node_to_cell: node field required");
    const Grid& g = f.grid;
    ScalarField out(g, Centering::Cell);
    for (int j = 0; j < g.n2() - 1; ++j)
        for (int i = 0; i < g.n1() - 1; ++i)
            out(i, j) = 0.25 * (f(i, j) + f(i + 1, j) + f(i, j + 1) + f(i + 1, j + 1));
    return out;
}

ScalarField divergence(const VectorField& v) {
    const Grid& g = v.grid;
    ScalarField vx(g, Centering::Node), vy(g, Centering::Node);
    for (std::size_t n = 0; n < v.values.size(); ++n) {
        vx.values[n] = v.values[n].x;
        vy.values[n] = v.values[n].y;
    }
    ScalarField d = derivative(vx, 0);
    const ScalarField dy = derivative(vy, 1);
    for (std::size_t n = 0; n < d.values.size(); ++n) d.values[n] += dy.values[n];
    return d;
}

VectorField divergence(const TensorField& t) {
    const Grid& g = t.grid;
    VectorField rows[2] = {VectorField(g, Centering::Node), VectorField(g, Centering::Node)};
    for (std::size_t n = 0; n < t.values.size(); ++n) {
        // column k of T as a vector field over j
        rows[0].values[n] = {t.values[n].xx, t.values[n].yx};
        rows[1].values[n] = {t.values[n].xy, t.values[n].yy};
    }
    const ScalarField d0 = divergence(rows[0]);
    const ScalarField d1 = divergence(rows[1]);
    VectorField out(g, Centering::Node);
    for (std::size_t n = 0; n < out.values.size(); ++n) out.values[n] = {d0.values[n], d1.values[n]};
    return out;
}

VectorField gradient(const ScalarField& f) {
    const ScalarField dx = derivative(f, 0);
    const ScalarField dy = derivative(f, 1);
    VectorField out(f.grid, Centering::Node);
    for (std::size_t n = 0; n < out.values.size(); ++n) out.values[n] = {dx.values[n], dy.values[n]};
    return out;
}

double pair_with_test(const ScalarField& f, const ScalarTest& phi, double t, const Region& region) {
    double sum = 0.0;
    for (int j = 0; j < f.ny(); ++j) {
        for (int i = 0; i < f.nx(); ++i) {
            const double w = weight_at(f, i, j, region);
            if (w == 0.0) continue;
            sum += w * f(i, j) * phi(f.point(i, j), t).value;
        }
    }
    return sum;
}

double pair_with_test(const VectorField& v, const VectorTest& w, double t, const Region& region) {
    double sum = 0.0;
    for (int j = 0; j < v.ny(); ++j) {
        for (int i = 0; i < v.nx(); ++i) {
            const double wt = weight_at(v, i, j, region);
            if (wt == 0.0) continue;
            sum += wt * dot(v(i, j), w(v.point(i, j), t));
        }
    }
    return sum;
}

Vec2 pair_with_test(const TensorField& tensor, const VectorTest& w, double t, const Region& region) {
    Vec2 sum{};
    for (int j = 0; j < tensor.ny(); ++j) {
        for (int i = 0; i < tensor.nx(); ++i) {
            const double wt = weight_at(tensor, i, j, region);
            if (wt == 0.0) continue;
            sum += wt * left_multiply(w(tensor.point(i, j), t), tensor(i, j));
        }
    }
    return sum;
}

double integrate(const ScalarField& f, const Region& region) {
    double sum = 0.0;
    for (int j = 0; j < f.ny(); ++j) {
        for (int i = 0; i < f.nx(); ++i) {
            const double w = weight_at(f, i, j, region);
            if (w != 0.0) sum += w * f(i, j);
        }
    }
    return sum;
}

Mat2 integrate(const TensorField& tensor, const Region& region) {
    Mat2 sum{};
    for (int j = 0; j < tensor.ny(); ++j) {
        for (int i = 0; i < tensor.nx(); ++i) {
            const double w = weight_at(tensor, i, j, region);
            if (w == 0.0) continue;
            const Mat2& m = tensor(i, j);
            sum.xx += w * m.xx;
            sum.xy += w * m.xy;
            sum.yx += w * m.yx;
            sum.yy += w * m.yy;
        }
    }
    return sum;
}

double circulation(const VectorField& j, int i0, int j0, int i1, int j1) {
    const double h = j.grid.h();
    double c = 0.0;
    for (int i = i0; i < i1; ++i) {
        c += 0.5 * h * (j(i, j0).x + j(i + 1, j0).x);
        c -= 0.5 * h * (j(i, j1).x + j(i + 1, j1).x);
    }
    for (int k = j0; k < j1; ++k) {
        c += 0.5 * h * (j(i1, k).y + j(i1, k + 1).y);
        c -= 0.5 * h * (j(i0, k).y + j(i0, k + 1).y);
    }
    return c;
}

}  // namespace glv
