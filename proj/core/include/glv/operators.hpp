#pragma once

#include "glv/fields.hpp"
#include "glv/test_functions.hpp"

namespace glv {

/// Central differences in the interior, one-sided second order at the
/// boundary. Axis 0 is x, axis 1 is y.
std::vector<cplx> derivative(const ComplexField& u, int axis);
ScalarField derivative(const ScalarField& f, int axis);

/// j(u) = (u × ∂₁u, u × ∂₂u), node centered.
VectorField current(const ComplexField& u);

/// Cell-centered J(u) = ½ curl j(u), taken as the circulation of j around
/// each cell (trapezoid edge averages) divided by 2h². Summed over cells it
/// reproduces half the boundary circulation of j exactly.
ScalarField jacobian(const ComplexField& u);

/// Node-centered det(∇u) from central differences.
ScalarField jacobian_nodes(const ComplexField& u);

/// V = (u_t × ∂₁u, u_t × ∂₂u), so that ∂ₜJ = curl V.
VectorField jacobian_velocity(const ComplexField& u, const ComplexField& u_t);

/// p(u) = ((u_t, ∂₁u), (u_t, ∂₂u)).
VectorField momentum(const ComplexField& u, const ComplexField& u_t);

/// (∇u ⊗ ∇u)_{jk} = (∂ⱼu, ∂ₖu); symmetric by construction.
TensorField stress(const ComplexField& u);

/// e_ε = ½|∇u|² + (1 − |u|²)²/(4ε²). The squared partials are the mean of
/// the squared forward differences on the adjacent edges, so the trapezoid
/// sum is the variational energy of the five-point Laplacian.
ScalarField energy_density(const ComplexField& u, const EpsilonScaling& scaling);

/// Trapezoid integral of energy_density.
double total_energy(const ComplexField& u, const EpsilonScaling& scaling);

/// Cell-centered discrete curl: plaquette circulation divided by h².
ScalarField curl(const VectorField& v);
/// Average of the adjacent cells at every node.
ScalarField cell_to_node(const ScalarField& f);
/// Average of the four corner nodes of every cell.
ScalarField node_to_cell(const ScalarField& f);

/// Node-centered divergence by central differences.
ScalarField divergence(const VectorField& v);
/// Row divergence of a tensor: (div T)ₖ = Σⱼ ∂ⱼTⱼₖ.
VectorField divergence(const TensorField& t);
VectorField gradient(const ScalarField& f);

/// Trapezoid (node) or midpoint (cell) integral of f·φ over the region.
double pair_with_test(const ScalarField& f, const ScalarTest& phi, double t = 0.0,
                      const Region& region = Region::whole());
double pair_with_test(const VectorField& v, const VectorTest& w, double t = 0.0,
                      const Region& region = Region::whole());
/// ∫ w·T over the region, a vector.
Vec2 pair_with_test(const TensorField& tensor, const VectorTest& w, double t = 0.0,
                    const Region& region = Region::whole());
/// ∫ f over the region.
double integrate(const ScalarField& f, const Region& region = Region::whole());
/// ∫ T over the region, entry by entry.
Mat2 integrate(const TensorField& tensor, const Region& region = Region::whole());

/// Sum of the circulation of j along the outer boundary of the node box
/// [i0, i1] × [j0, j1], with trapezoid edge averages.
double circulation(const VectorField& j, int i0, int j0, int i1, int j1);

}  // namespace glv
