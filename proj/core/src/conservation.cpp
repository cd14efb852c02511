#include "glv/conservation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "glv/errors.hpp"
#include "glv/operators.hpp"

namespace glv {

double LawResidual::term(const std::string& name) const {
    for (const auto& t : terms)
        if (t.name == name) return t.norm;
    throw std::out_of_range("no residual term " + name);
}

bool ResidualReport::finite() const {
    for (const LawResidual* l : {&energy, &jacobian, &mass}) {
        if (!std::isfinite(l->total)) return false;
        for (const auto& t : l->terms)
            if (!std::isfinite(t.norm)) return false;
    }
    return true;
}

namespace {

ScalarField node_curl(const VectorField& v) {
    ScalarField a(v.grid, Centering::Node), b(v.grid, Centering::Node);
    for (std::size_t n = 0; n < v.values.size(); ++n) {
        a.values[n] = v.values[n].x;
        b.values[n] = v.values[n].y;
    }
    const ScalarField dby = derivative(b, 0), day = derivative(a, 1);
    ScalarField out(v.grid, Centering::Node);
    for (std::size_t n = 0; n < out.values.size(); ++n) out.values[n] = dby.values[n] - day.values[n];
    return out;
}

/// Central-difference energy density.
ScalarField node_energy(const ComplexField& u, const EpsilonScaling& s) {
    const auto d1 = derivative(u, 0), d2 = derivative(u, 1);
    ScalarField e(u.grid, Centering::Node);
    const double c = 1.0 / (4.0 * s.eps * s.eps);
    for (std::size_t n = 0; n < e.values.size(); ++n) {
        const double m = 1.0 - std::norm(u.values[n]);
        e.values[n] = 0.5 * (std::norm(d1[n]) + std::norm(d2[n])) + c * m * m;
    }
    return e;
}

class Accumulator {
public:
    Accumulator(const Grid& g, int collar) : grid_(g), collar_(collar), sum_(g.size(), 0.0) {}

    void add(const std::string& name, const std::function<double(std::size_t)>& term) {
        double sq = 0.0;
        for (int j = collar_; j < grid_.n2() - collar_; ++j) {
            for (int i = collar_; i < grid_.n1() - collar_; ++i) {
                const std::size_t n = grid_.index(i, j);
                const double v = term(n);
                sum_[n] += v;
                sq += v * v;
            }
        }
        norms_.push_back({name, std::sqrt(sq) * grid_.h()});
    }

    void finish(LawResidual& out) const {
        double sq = 0.0;
        for (int j = collar_; j < grid_.n2() - collar_; ++j)
            for (int i = collar_; i < grid_.n1() - collar_; ++i) sq += sum_[grid_.index(i, j)] * sum_[grid_.index(i, j)];
        if (out.terms.empty()) {
            out.terms = norms_;
        } else {
            for (std::size_t k = 0; k < norms_.size(); ++k)
                out.terms[k].norm = std::max(out.terms[k].norm, norms_[k].norm);
        }
        out.total = std::max(out.total, std::sqrt(sq) * grid_.h());
    }

private:
    const Grid& grid_;
    int collar_;
    std::vector<double> sum_;
    std::vector<NamedNorm> norms_;
};

}  // namespace

ResidualReport conservation_residuals(std::span<const ComplexField> window, const EpsilonScaling& scaling,
                                      const ExternalFields& fields, const SourceTerm& source, int collar) {
    if (window.size() < 2) throw ConfigError("conservation_residuals: need at least two states");
    ResidualReport rep;
    rep.energy.law = "energy";
    rep.jacobian.law = "jacobian";
    rep.mass.law = "mass";
    rep.t_begin = window.front().time;
    rep.t_end = window.back().time;
    const Grid& g = window.front().grid;
    const double lam = scaling.lambda_eps, k = scaling.k_eps;

    for (std::size_t w = 0; w + 1 < window.size(); ++w) {
        const ComplexField& u0 = window[w];
        const ComplexField& u1 = window[w + 1];
        require_same_grid(u0.grid, u1.grid, "conservation_residuals");
        const double dt = u1.time - u0.time;
        if (!(dt > 0.0)) throw ConfigError("conservation_residuals: states must be strictly increasing in time");
        const double tm = 0.5 * (u0.time + u1.time);

        ComplexField um(g, {}, tm), ut(g, {}, tm);
        for (std::size_t n = 0; n < g.size(); ++n) {
            um.values[n] = 0.5 * (u0.values[n] + u1.values[n]);
            ut.values[n] = (u1.values[n] - u0.values[n]) / dt;
        }
        const VectorField F = fields.sample_F(g, tm), G = fields.sample_G(g, tm);
        std::vector<cplx> S(g.size(), cplx{});
        if (source) source(tm, g, S);

        const VectorField p = momentum(um, ut);
        const VectorField V = jacobian_velocity(um, ut);
        const VectorField j = current(um);
        const TensorField T = stress(um);
        const auto d1 = derivative(um, 0), d2 = derivative(um, 1);

        // Energy law.
        {
            const ScalarField e0 = node_energy(u0, scaling), e1 = node_energy(u1, scaling);
            const ScalarField div_p = divergence(p);
            Accumulator acc(g, collar);
            acc.add("dt_e", [&](std::size_t n) { return (e1.values[n] - e0.values[n]) / dt; });
            acc.add("div_p", [&](std::size_t n) { return -div_p.values[n]; });
            acc.add("dissipation", [&](std::size_t n) { return lam * std::norm(ut.values[n]); });
            acc.add("F_p", [&](std::size_t n) { return k * dot(F.values[n], p.values[n]); });
            acc.add("G_V", [&](std::size_t n) { return -dot(G.values[n], V.values[n]); });
            acc.add("source", [&](std::size_t n) { return -rdot(ut.values[n], S[n]); });
            acc.finish(rep.energy);
        }

        // Jacobian law.
        {
            const ScalarField J0 = jacobian_nodes(u0), J1 = jacobian_nodes(u1), Jm = jacobian_nodes(um);
            const ScalarField curl_p = node_curl(p);
            const ScalarField curl_div_T = node_curl(divergence(T));
            VectorField TF(g, Centering::Node), JG(g, Centering::Node), Sg(g, Centering::Node);
            for (std::size_t n = 0; n < g.size(); ++n) {
                const Mat2& t = T.values[n];
                const Vec2 f = F.values[n];
                TF.values[n] = {t.xx * f.x + t.yx * f.y, t.xy * f.x + t.yy * f.y};
                JG.values[n] = Jm.values[n] * G.values[n];
                Sg.values[n] = {rdot(S[n], d1[n]), rdot(S[n], d2[n])};
            }
            const ScalarField curl_TF = node_curl(TF), div_JG = divergence(JG), curl_S = node_curl(Sg);
            Accumulator acc(g, collar);
            acc.add("dt_J", [&](std::size_t n) { return (J1.values[n] - J0.values[n]) / dt; });
            acc.add("curl_p", [&](std::size_t n) { return lam * curl_p.values[n]; });
            acc.add("curl_div_T", [&](std::size_t n) { return -curl_div_T.values[n]; });
            acc.add("F_T", [&](std::size_t n) { return k * curl_TF.values[n]; });
            acc.add("G_J", [&](std::size_t n) { return div_JG.values[n]; });
            acc.add("source", [&](std::size_t n) { return -curl_S.values[n]; });
            acc.finish(rep.jacobian);
        }

        // Mass law.
        {
            ScalarField m(g, Centering::Node);
            for (std::size_t n = 0; n < g.size(); ++n) m.values[n] = 0.5 * (1.0 - std::norm(um.values[n]));
            const VectorField grad_m = gradient(m);
            const ScalarField div_j = divergence(j);
            Accumulator acc(g, collar);
            acc.add("dt_m", [&](std::size_t n) {
                return 0.5 * (std::norm(u0.values[n]) - std::norm(u1.values[n])) / dt;
            });
            acc.add("cross", [&](std::size_t n) { return -lam * rcross(um.values[n], ut.values[n]); });
            acc.add("F_j", [&](std::size_t n) { return -k * dot(F.values[n], j.values[n]); });
            acc.add("G_grad_m", [&](std::size_t n) { return dot(G.values[n], grad_m.values[n]); });
            acc.add("div_j", [&](std::size_t n) { return div_j.values[n]; });
            acc.add("source", [&](std::size_t n) { return rdot(cplx(0.0, 1.0) * um.values[n], S[n]); });
            acc.finish(rep.mass);
        }
    }
    return rep;
}

}  // namespace glv
