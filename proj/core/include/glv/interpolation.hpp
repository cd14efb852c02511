#pragma once

#include "glv/fields.hpp"

namespace glv {

/// Tensor-product Lagrange interpolation of a node field on the 6×6 node
/// stencil around p (shifted inward near the boundary). Exact for
/// polynomials of degree ≤ 5 in each variable.
double interpolate(const ScalarField& f, Vec2 p);
/// Gradient of the same interpolant.
Vec2 interpolate_gradient(const ScalarField& f, Vec2 p);

}  // namespace glv
