#include "glv/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>

#include "glv/errors.hpp"

namespace glv {

namespace {

// FFTW planning is not thread safe; execution of existing plans is.
std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

struct SpectralSolver::Impl {
    Grid grid;
    BoundaryKind kind;
    int m1 = 0, m2 = 0;  // transform sizes
    std::vector<double> eig1, eig2;
    double norm = 1.0;
    double* buf = nullptr;
    double* buf2 = nullptr;
    fftw_plan plan = nullptr;

    Impl(const Grid& g, BoundaryKind k) : grid(g), kind(k) {
        const int n1 = g.n1(), n2 = g.n2();
        const double h2 = g.h() * g.h();
        if (kind == BoundaryKind::Neumann) {
            m1 = n1;
            m2 = n2;
            for (int q = 0; q < m1; ++q)
                eig1.push_back((2.0 - 2.0 * std::cos(std::numbers::pi * q / (n1 - 1))) / h2);
            for (int q = 0; q < m2; ++q)
                eig2.push_back((2.0 - 2.0 * std::cos(std::numbers::pi * q / (n2 - 1))) / h2);
        } else {
            m1 = n1 - 2;
            m2 = n2 - 2;
            for (int q = 1; q <= m1; ++q)
                eig1.push_back((2.0 - 2.0 * std::cos(std::numbers::pi * q / (n1 - 1))) / h2);
            for (int q = 1; q <= m2; ++q)
                eig2.push_back((2.0 - 2.0 * std::cos(std::numbers::pi * q / (n2 - 1))) / h2);
        }
        norm = 1.0 / (4.0 * (n1 - 1) * (n2 - 1));
        const std::size_t count = static_cast<std::size_t>(m1) * m2;
        buf = fftw_alloc_real(count);
        buf2 = fftw_alloc_real(count);
        if (buf == nullptr || buf2 == nullptr) throw SolverFailure("spectral solver: allocation failed");
        const fftw_r2r_kind kk = kind == BoundaryKind::Neumann ? FFTW_REDFT00 : FFTW_RODFT00;
        std::lock_guard lock(plan_mutex());
        plan = fftw_plan_r2r_2d(m2, m1, buf, buf, kk, kk, FFTW_ESTIMATE);
        if (plan == nullptr) throw SolverFailure("spectral solver: planning failed");
    }

    ~Impl() {
        {
            std::lock_guard lock(plan_mutex());
            if (plan != nullptr) fftw_destroy_plan(plan);
        }
        fftw_free(buf);
        fftw_free(buf2);
    }

    // Loads the transform input for one real component into `dst`.
    template <class Get, class Bnd>
    void load(double* dst, Get rhs, Bnd boundary) const {
        const int n1 = grid.n1();
        const double inv_h2 = 1.0 / (grid.h() * grid.h());
        if (kind == BoundaryKind::Neumann) {
            for (int j = 0; j < m2; ++j)
                for (int i = 0; i < m1; ++i) dst[j * m1 + i] = rhs(grid.index(i, j));
            return;
        }
        for (int j = 1; j <= m2; ++j) {
            for (int i = 1; i <= m1; ++i) {
                double r = rhs(grid.index(i, j));
                if (i == 1) r += boundary(grid.index(0, j)) * inv_h2;
                if (i == n1 - 2) r += boundary(grid.index(n1 - 1, j)) * inv_h2;
                if (j == 1) r += boundary(grid.index(i, 0)) * inv_h2;
                if (j == grid.n2() - 2) r += boundary(grid.index(i, grid.n2() - 1)) * inv_h2;
                dst[(j - 1) * m1 + (i - 1)] = r;
            }
        }
    }

    template <class Put>
    void store(const double* src, Put put) const {
        const int off = kind == BoundaryKind::Neumann ? 0 : 1;
        for (int j = 0; j < m2; ++j)
            for (int i = 0; i < m1; ++i) put(grid.index(i + off, j + off), src[j * m1 + i] * norm);
    }
};

SpectralSolver::SpectralSolver(const Grid& grid, BoundaryKind kind)
    : impl_(std::make_unique<Impl>(grid, kind)) {}
SpectralSolver::~SpectralSolver() = default;
SpectralSolver::SpectralSolver(SpectralSolver&&) noexcept = default;
SpectralSolver& SpectralSolver::operator=(SpectralSolver&&) noexcept = default;

const Grid& SpectralSolver::grid() const { return impl_->grid; }
BoundaryKind SpectralSolver::kind() const { return impl_->kind; }

double SpectralSolver::eigenvalue(int k1, int k2) const { return impl_->eig1[k1] + impl_->eig2[k2]; }

void SpectralSolver::solve(std::vector<cplx>& u, const std::vector<cplx>& rhs, cplx alpha) {
    Impl& s = *impl_;
    if (u.size() != s.grid.size() || rhs.size() != s.grid.size())
        throw GridMismatch("spectral solve: size mismatch");
    s.load(s.buf, [&](std::size_t n) { return rhs[n].real(); }, [&](std::size_t n) { return u[n].real(); });
    s.load(s.buf2, [&](std::size_t n) { return rhs[n].imag(); }, [&](std::size_t n) { return u[n].imag(); });
    fftw_execute_r2r(s.plan, s.buf, s.buf);
    fftw_execute_r2r(s.plan, s.buf2, s.buf2);
    for (int j = 0; j < s.m2; ++j) {
        for (int i = 0; i < s.m1; ++i) {
            const std::size_t n = static_cast<std::size_t>(j) * s.m1 + i;
            const cplx denom = alpha + s.eig1[i] + s.eig2[j];
            cplx v{s.buf[n], s.buf2[n]};
            v = std::abs(denom) == 0.0 ? cplx{} : v / denom;
            s.buf[n] = v.real();
            s.buf2[n] = v.imag();
        }
    }
    fftw_execute_r2r(s.plan, s.buf, s.buf);
    fftw_execute_r2r(s.plan, s.buf2, s.buf2);
    s.store(s.buf, [&](std::size_t n, double x) { u[n].real(x); });
    s.store(s.buf2, [&](std::size_t n, double x) { u[n].imag(x); });
}

void SpectralSolver::solve(std::vector<double>& u, const std::vector<double>& rhs, double alpha) {
    Impl& s = *impl_;
    if (u.size() != s.grid.size() || rhs.size() != s.grid.size())
        throw GridMismatch("spectral solve: size mismatch");
    s.load(s.buf, [&](std::size_t n) { return rhs[n]; }, [&](std::size_t n) { return u[n]; });
    fftw_execute_r2r(s.plan, s.buf, s.buf);
    for (int j = 0; j < s.m2; ++j) {
        for (int i = 0; i < s.m1; ++i) {
            const std::size_t n = static_cast<std::size_t>(j) * s.m1 + i;
            const double denom = alpha + s.eig1[i] + s.eig2[j];
            s.buf[n] = denom == 0.0 ? 0.0 : s.buf[n] / denom;
        }
    }
    fftw_execute_r2r(s.plan, s.buf, s.buf);
    s.store(s.buf, [&](std::size_t n, double x) { u[n] = x; });
}

namespace {

template <class T>
std::vector<T> laplacian_impl(const Grid& g, BoundaryKind kind, const std::vector<T>& u) {
    const int n1 = g.n1(), n2 = g.n2();
    const double inv_h2 = 1.0 / (g.h() * g.h());
    std::vector<T> out(u.size(), T{});
    auto at = [&](int i, int j) {
        // reflection across the boundary for ghost nodes
        if (i < 0) i = 1;
        if (i > n1 - 1) i = n1 - 2;
        if (j < 0) j = 1;
        if (j > n2 - 1) j = n2 - 2;
        return u[g.index(i, j)];
    };
    for (int j = 0; j < n2; ++j) {
        for (int i = 0; i < n1; ++i) {
            if (kind == BoundaryKind::Dirichlet && g.is_boundary(i, j)) continue;
            out[g.index(i, j)] =
                (at(i + 1, j) + at(i - 1, j) + at(i, j + 1) + at(i, j - 1) - 4.0 * at(i, j)) * inv_h2;
        }
    }
    return out;
}

}  // namespace

std::vector<cplx> apply_laplacian(const Grid& grid, BoundaryKind kind, const std::vector<cplx>& u) {
    return laplacian_impl(grid, kind, u);
}
std::vector<double> apply_laplacian(const Grid& grid, BoundaryKind kind,
                                    const std::vector<double>& u) {
    return laplacian_impl(grid, kind, u);
}

}  // namespace glv
