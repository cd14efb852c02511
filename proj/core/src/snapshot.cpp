#include "glv/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "glv/errors.hpp"

namespace glv {

namespace {

static_assert(std::endian::native == std::endian::little, "snapshot IO assumes a little-endian host");

constexpr char kMagic[4] = {'G', 'L', 'V', '1'};

template <class T>
void put(std::ofstream& out, T v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::ifstream& in) {
    T v{};
    in.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!in) throw Error("snapshot: truncated file");
    return v;
}

void write_header(std::ofstream& out, const Grid& g, double time, double eps) {
    out.write(kMagic, 4);
    put<std::int64_t>(out, g.n1());
    put<std::int64_t>(out, g.n2());
    put(out, g.origin().x);
    put(out, g.origin().y);
    put(out, g.extent().x);
    put(out, g.extent().y);
    put(out, time);
    put(out, eps);
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("snapshot: cannot open " + path.string());
    return out;
}

}  // namespace

void write_snapshot(const std::filesystem::path& path, const ComplexField& u, double eps) {
    auto out = open_out(path);
    write_header(out, u.grid, u.time, eps);
    out.write(reinterpret_cast<const char*>(u.values.data()),
              static_cast<std::streamsize>(u.values.size() * sizeof(cplx)));
    if (!out) throw Error("snapshot: write failed for " + path.string());
}

void write_snapshot(const std::filesystem::path& path, const ScalarField& f, double time, double eps) {
    auto out = open_out(path);
    Grid g = f.grid;
    if (f.centering == Centering::Cell) {
        const double h = g.h();
        g = Grid(g.origin() + Vec2{0.5 * h, 0.5 * h}, g.extent() - Vec2{h, h}, g.n1() - 1, g.n2() - 1);
    }
    write_header(out, g, time, eps);
    for (double v : f.values) {
        put(out, v);
        put(out, 0.0);
    }
    if (!out) throw Error("snapshot: write failed for " + path.string());
}

Snapshot read_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("snapshot: cannot open " + path.string());
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0) throw Error("snapshot: bad magic in " + path.string());
    const auto n1 = get<std::int64_t>(in);
    const auto n2 = get<std::int64_t>(in);
    const Vec2 origin{get<double>(in), get<double>(in)};
    const Vec2 extent{get<double>(in), get<double>(in)};
    const double time = get<double>(in);
    const double eps = get<double>(in);
    Snapshot s{ComplexField(Grid(origin, extent, static_cast<int>(n1), static_cast<int>(n2)), {}, time), eps};
    in.read(reinterpret_cast<char*>(s.u.values.data()),
            static_cast<std::streamsize>(s.u.values.size() * sizeof(cplx)));
    if (!in) throw Error("snapshot: truncated data in " + path.string());
    return s;
}

}  // namespace glv
