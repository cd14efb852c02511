#pragma once

#include <memory>
#include <vector>

#include "glv/fields.hpp"

namespace glv {

enum class BoundaryKind { Dirichlet, Neumann };

/// Fast solver for (α − Δₕ)u = r with the five-point Laplacian on a node
/// grid. Neumann uses ghost-node reflection on every node (cosine
/// transform); Dirichlet keeps the boundary values already stored in u and
/// solves on the interior (sine transform). A solver owns scratch buffers
/// and is not safe for concurrent use; construct one per thread.
class SpectralSolver {
public:
    SpectralSolver(const Grid& grid, BoundaryKind kind);
    ~SpectralSolver();
    SpectralSolver(SpectralSolver&&) noexcept;
    SpectralSolver& operator=(SpectralSolver&&) noexcept;
    SpectralSolver(const SpectralSolver&) = delete;
    SpectralSolver& operator=(const SpectralSolver&) = delete;

    [[nodiscard]] const Grid& grid() const;
    [[nodiscard]] BoundaryKind kind() const;

    /// Complex shift α. In the singular Neumann case α = 0 the constant mode
    /// of the solution is set to zero (weighted-mean-free solution).
    void solve(std::vector<cplx>& u, const std::vector<cplx>& rhs, cplx alpha);
    void solve(std::vector<double>& u, const std::vector<double>& rhs, double alpha);

    /// Eigenvalue of −Δₕ for mode (k1, k2) in the solver's basis.
    [[nodiscard]] double eigenvalue(int k1, int k2) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Five-point Laplacian with the same boundary treatment as the solver:
/// Neumann reflects across every side, Dirichlet leaves boundary rows zero.
std::vector<cplx> apply_laplacian(const Grid& grid, BoundaryKind kind, const std::vector<cplx>& u);
std::vector<double> apply_laplacian(const Grid& grid, BoundaryKind kind,
                                    const std::vector<double>& u);

}  // namespace glv
