#pragma once

#include <span>
#include <string>
#include <vector>

#include "glv/external_fields.hpp"
#include "glv/fields.hpp"
#include "glv/pde.hpp"

namespace glv {

struct NamedNorm {
    std::string name;
    double norm = 0.0;
};

/// One conservation law: interior L² norm of every term and of their sum.
struct LawResidual {
    std::string law;
    std::vector<NamedNorm> terms;
    double total = 0.0;

    [[nodiscard]] double term(const std::string& name) const;
};

struct ResidualReport {
    double t_begin = 0.0;
    double t_end = 0.0;
    LawResidual energy;
    LawResidual jacobian;
    LawResidual mass;

    [[nodiscard]] bool finite() const;
};

/// Residuals of the three local laws obeyed by smooth solutions of
///   (λ+i)∂ₜu + k(F·∇)u + (G·∇)(iu) = Δu + (1−|u|²)u/ε² + S,
/// namely
///   ∂ₜe − div p + λ|∂ₜu|² + k(F, p) − (G, V) − (∂ₜu, S) = 0,
///   ∂ₜJ + λ curl p − curl div(∇u⊗∇u) + k curl(F·∇u⊗∇u) + div(J G) − curl (S, ∇u) = 0,
///   ∂ₜm − λ(u × ∂ₜu) − k(F, j) + (G, ∇m) + div j + (iu, S) = 0,  m = (1−|u|²)/2,
/// with p = (∂ₜu, ∇u) and V = (i∂ₜu, ∇u). Each consecutive pair of the window
/// is evaluated at its time midpoint; the reported norms are the maxima over
/// pairs. Nodes within `collar` of the boundary are excluded.
ResidualReport conservation_residuals(std::span<const ComplexField> window, const EpsilonScaling& scaling,
                                      const ExternalFields& fields, const SourceTerm& source = {},
                                      int collar = 4);

}  // namespace glv
