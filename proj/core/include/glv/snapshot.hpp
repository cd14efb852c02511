#pragma once

#include <filesystem>

#include "glv/fields.hpp"

namespace glv {

/// Binary snapshot: "GLV1", then n1, n2 as little-endian int64, origin,
/// extent, time and ε as little-endian float64, then row-major interleaved
/// (Re, Im) float64 values.
struct Snapshot {
    ComplexField u;
    double eps = 0.0;
};

void write_snapshot(const std::filesystem::path& path, const ComplexField& u, double eps);
/// Real fields are stored with zero imaginary part.
void write_snapshot(const std::filesystem::path& path, const ScalarField& f, double time, double eps);
Snapshot read_snapshot(const std::filesystem::path& path);

}  // namespace glv
