#include "glv/radial_profile.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <numbers>
#include <sstream>

#include "glv/errors.hpp"

namespace glv {

namespace {

// Residual of the discrete core equation at interior node i.
double residual_at(const std::vector<double>& f, int i, double dr) {
    const double rho = i * dr;
    return (f[i + 1] - 2.0 * f[i] + f[i - 1]) / (dr * dr) + (f[i + 1] - f[i - 1]) / (2.0 * dr * rho) -
           f[i] / (rho * rho) + (1.0 - f[i] * f[i]) * f[i];
}

double residual_norm(const std::vector<double>& f, double dr) {
    double m = 0.0;
    for (int i = 1; i + 1 < static_cast<int>(f.size()); ++i) m = std::max(m, std::abs(residual_at(f, i, dr)));
    return m;
}

}  // namespace

double RadialProfile::operator()(double rho) const {
    rho = std::abs(rho);
    if (rho >= r_max) return 1.0 - 0.5 / (rho * rho);
    const double s = rho / dr;
    const int n = nodes();
    int i = static_cast<int>(s);
    i = std::clamp(i, 1, n - 3);
    const double t = s - i;
    // Cubic Lagrange on nodes i−1 .. i+2; f is odd so f(−dr) = −f(dr).
    const double fm = i - 1 >= 0 ? f[i - 1] : -f[1];
    const double f0 = f[i], f1 = f[i + 1], f2 = f[i + 2];
    return fm * (-t * (t - 1.0) * (t - 2.0) / 6.0) + f0 * ((t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0) +
           f1 * (-(t + 1.0) * t * (t - 2.0) / 2.0) + f2 * ((t + 1.0) * t * (t - 1.0) / 6.0);
}

double RadialProfile::derivative(double rho) const {
    rho = std::abs(rho);
    if (rho >= r_max) return 1.0 / (rho * rho * rho);
    const double s = rho / dr;
    const int n = nodes();
    int i = std::clamp(static_cast<int>(s), 1, n - 3);
    const double t = s - i;
    const double fm = f[i - 1], f0 = f[i], f1 = f[i + 1], f2 = f[i + 2];
    const double dm = -(3.0 * t * t - 6.0 * t + 2.0) / 6.0;
    const double d0 = (3.0 * t * t - 4.0 * t - 1.0) / 2.0;
    const double d1 = -(3.0 * t * t - 2.0 * t - 2.0) / 2.0;
    const double d2 = (3.0 * t * t - 1.0) / 6.0;
    return (fm * dm + f0 * d0 + f1 * d1 + f2 * d2) / dr;
}

RadialProfile radial_profile(int nodes, double r_max) {
    if (nodes < 1000) throw ConfigError("radial_profile: at least 1000 nodes required");
    if (!(r_max > 2.0)) throw ConfigError("radial_profile: r_max must exceed 2");
    RadialProfile p;
    p.r_max = r_max;
    p.dr = r_max / (nodes - 1);
    const double dr = p.dr;
    const int n = nodes;
    p.f.resize(n);
    for (int i = 0; i < n; ++i) {
        const double rho = i * dr;
        p.f[i] = rho / std::sqrt(rho * rho + 2.0);
    }
    p.f[0] = 0.0;
    p.f[n - 1] = 1.0 - 0.5 / (r_max * r_max);

    std::vector<double> a(n), b(n), c(n), r(n), delta(n), trial(n);
    // Round-off floor of the residual scales like 1/dr².
    const double floor = 1e-13 / (dr * dr);
    double res = residual_norm(p.f, dr);
    for (int iter = 0; iter < 100; ++iter) {
        // Tridiagonal Jacobian of the interior residuals.
        for (int i = 1; i < n - 1; ++i) {
            const double rho = i * dr;
            a[i] = 1.0 / (dr * dr) - 1.0 / (2.0 * dr * rho);
            c[i] = 1.0 / (dr * dr) + 1.0 / (2.0 * dr * rho);
            b[i] = -2.0 / (dr * dr) - 1.0 / (rho * rho) + 1.0 - 3.0 * p.f[i] * p.f[i];
            r[i] = -residual_at(p.f, i, dr);
        }
        // Thomas algorithm; boundary values are fixed so δ₀ = δₙ₋₁ = 0.
        for (int i = 2; i < n - 1; ++i) {
            const double m = a[i] / b[i - 1];
            b[i] -= m * c[i - 1];
            r[i] -= m * r[i - 1];
        }
        delta[0] = delta[n - 1] = 0.0;
        delta[n - 2] = r[n - 2] / b[n - 2];
        for (int i = n - 3; i >= 1; --i) delta[i] = (r[i] - c[i] * delta[i + 1]) / b[i];

        double step = 1.0;
        bool accepted = false;
        double update = 0.0;
        for (int k = 0; k < 30; ++k, step *= 0.5) {
            for (int i = 0; i < n; ++i) trial[i] = p.f[i] + step * delta[i];
            const double tr = residual_norm(trial, dr);
            if (tr < res || tr < floor) {
                p.f.swap(trial);
                res = tr;
                accepted = true;
                for (int i = 0; i < n; ++i) update = std::max(update, std::abs(step * delta[i]));
                break;
            }
        }
        if (!accepted) break;
        if (step == 1.0 && update < 1e-13) {
            p.newton_iterations = iter + 1;
            return p;
        }
    }
    if (res < floor) return p;
    std::ostringstream msg;
    msg << "radial_profile: Newton iteration stalled at residual " << res;
    throw NoConvergence(msg.str());
}

double core_energy(const std::vector<double>& f, double dr, double R) {
    const int n = static_cast<int>(std::lround(R / dr)) + 1;
    if (n > static_cast<int>(f.size())) throw ConfigError("core_energy: radius beyond table");
    double grad = 0.0;
    for (int i = 0; i + 1 < n; ++i) {
        const double d = (f[i + 1] - f[i]) / dr;
        grad += d * d * (i + 0.5) * dr * dr;
    }
    double rest = 0.0;
    for (int i = 1; i < n; ++i) {
        const double rho = i * dr;
        const double pot = 1.0 - f[i] * f[i];
        const double w = (i == n - 1) ? 0.5 : 1.0;
        rest += w * (f[i] * f[i] / (rho * rho) + 0.5 * pot * pot) * rho * dr;
    }
    // the ρ = 0 node contributes 0 (f²/ρ ~ ρ); the potential term there is 1/2·0
    return std::numbers::pi * (grad + rest);
}

double core_energy_limit(const RadialProfile& profile) {
    const double R = profile.r_max;
    return core_energy(profile.f, profile.dr, R) - std::numbers::pi * std::log(R) -
           std::numbers::pi / (4.0 * R * R);
}

GammaEstimate gamma_constant(const RadialProfile& profile) {
    GammaEstimate g;
    g.gamma = core_energy_limit(profile);
    g.nodes = profile.nodes();
    g.r_max = profile.r_max;
    const RadialProfile coarse = radial_profile((profile.nodes() + 1) / 2, profile.r_max);
    g.residual = std::abs(g.gamma - core_energy_limit(coarse));
    return g;
}

void save_profile(const std::filesystem::path& path, const RadialProfile& profile) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw Error("cannot write profile cache " + path.string());
    out << "# glv radial profile\n";
    out << "# r_max " << std::setprecision(17) << profile.r_max << " nodes " << profile.nodes() << "\n";
    out << "# rho f\n";
    for (int i = 0; i < profile.nodes(); ++i) out << i * profile.dr << ' ' << profile.f[i] << '\n';
}

std::optional<RadialProfile> load_profile(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    std::string line;
    std::getline(in, line);
    if (line != "# glv radial profile") return std::nullopt;
    std::getline(in, line);
    std::istringstream hdr(line);
    std::string hash, key1, key2;
    RadialProfile p;
    int n = 0;
    if (!(hdr >> hash >> key1 >> p.r_max >> key2 >> n) || key1 != "r_max" || key2 != "nodes" || n < 1000)
        return std::nullopt;
    std::getline(in, line);
    p.f.resize(n);
    for (int i = 0; i < n; ++i) {
        double rho = 0.0;
        if (!(in >> rho >> p.f[i])) return std::nullopt;
    }
    p.dr = p.r_max / (n - 1);
    return p;
}

const RadialProfile& default_profile() {
    static std::once_flag once;
    static RadialProfile profile;
    std::call_once(once, [] {
        constexpr int nodes = 40001;
        constexpr double r_max = 40.0;
        std::filesystem::path cache;
        if (const char* dir = std::getenv("GLV_CACHE_DIR"); dir != nullptr && *dir != '\0') {
            cache = std::filesystem::path(dir) / "radial_profile_r40_n40001.txt";
            if (auto p = load_profile(cache); p && p->nodes() == nodes && p->r_max == r_max) {
                profile = std::move(*p);
                return;
            }
        }
        profile = radial_profile(nodes, r_max);
        if (!cache.empty()) {
            std::error_code ec;
            std::filesystem::create_directories(cache.parent_path(), ec);
            try {
                save_profile(cache, profile);
            } catch (const Error&) {
                // an unwritable cache only costs recomputation
            }
        }
    });
    return profile;
}

}  // namespace glv
