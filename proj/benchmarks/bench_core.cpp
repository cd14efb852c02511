#include <benchmark/benchmark.h>

#include "glv/initial_data.hpp"
#include "glv/pde.hpp"
#include "glv/ren_energy.hpp"
#include "glv/vortex_track.hpp"

using namespace glv;

namespace {

const VortexConfiguration kDipole{{{0.3, 0.5}, {0.7, 0.5}}, {1, -1}};

ExternalFields no_fields(const Grid& g) { return ExternalFields({}, {}, g.origin(), g.origin() + g.extent()); }

void BM_Step(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Grid g = Grid::unit_square(n);
    const auto sc = EpsilonScaling::make(0.02, 1.0);
    PdeState s{well_prepared(kDipole, sc, g, BoundaryCondition::neumann()), 0, {}};
    StepperOptions opts;
    opts.energy_guard = 0.0;
    Stepper st(g, default_time_step(sc), sc, BoundaryCondition::neumann(), no_fields(g), opts);
    for (auto _ : state) st.advance(s);
    state.SetItemsProcessed(state.iterations() * static_cast<long>(g.size()));
}
BENCHMARK(BM_Step)->Arg(129)->Arg(257)->Arg(513)->Unit(benchmark::kMillisecond);

void BM_GradW(benchmark::State& state) {
    const Grid g = Grid::unit_square(static_cast<int>(state.range(0)));
    RenormalizedEnergy energy(g, BoundaryCondition::neumann());
    for (auto _ : state) benchmark::DoNotOptimize(energy.gradient(kDipole));
}
BENCHMARK(BM_GradW)->Arg(65)->Arg(129)->Arg(257)->Unit(benchmark::kMillisecond);

void BM_Detect(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Grid g = Grid::unit_square(n);
    const auto sc = EpsilonScaling::make(0.02, 1.0);
    const ComplexField u = well_prepared(kDipole, sc, g, BoundaryCondition::neumann());
    for (auto _ : state) benchmark::DoNotOptimize(detect_vortices(u, sc.eps));
}
BENCHMARK(BM_Detect)->Arg(129)->Arg(257)->Arg(513)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
