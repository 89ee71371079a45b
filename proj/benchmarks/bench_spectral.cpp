#include <benchmark/benchmark.h>

#include <conegeo/spectral.hpp>

using namespace conegeo;

static void BM_AssembleOperators(benchmark::State& state) {
    auto cone = std::make_shared<ConeGeometry>(SphericalDomainSpec::cap(1.2));
    auto surf = spherical_sector(cone, 1.0);
    const auto mesh = build_polar_mesh(*cone, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto ops = assemble_operators(surf->chart(), mesh);
        benchmark::DoNotOptimize(ops.K.nonZeros());
    }
    state.SetItemsProcessed(state.iterations() * mesh.triangles.size());
}
BENCHMARK(BM_AssembleOperators)->Arg(8)->Arg(16)->Arg(32);

static void BM_Lambda1(benchmark::State& state) {
    auto cone = std::make_shared<ConeGeometry>(SphericalDomainSpec::cap(1.2));
    auto surf = spherical_sector(cone, 1.0);
    const auto mesh = build_polar_mesh(*cone, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto res = lambda1_neumann(surf->chart(), mesh);
        benchmark::DoNotOptimize(res.lambda1);
    }
}
BENCHMARK(BM_Lambda1)->Arg(8)->Arg(16);
