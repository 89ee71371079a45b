#include <benchmark/benchmark.h>

#include <conegeo/identities.hpp>

using namespace conegeo;

static void BM_Mink2Report(benchmark::State& state) {
    auto cone = std::make_shared<ConeGeometry>(SphericalDomainSpec::cap(1.2));
    auto surf = build_polar_graph(cone, RadialProfile::bump(3, 1.0, 0.1, 2, 1.2));
    const int n = static_cast<int>(state.range(0));
    const auto rule = make_rule(*cone, n, n / 4, 2 * n);
    for (auto _ : state) {
        auto rep = mink2_report(*surf, rule);
        benchmark::DoNotOptimize(rep.residual);
    }
    state.SetItemsProcessed(state.iterations() * rule.interior.size());
}
BENCHMARK(BM_Mink2Report)->Arg(64)->Arg(128)->Arg(256);

static void BM_DivergenceCheck(benchmark::State& state) {
    auto cone = std::make_shared<ConeGeometry>(SphericalDomainSpec::cap(1.2));
    auto surf = build_polar_graph(cone, RadialProfile::axisym(3, 1.0, 0.1, 1.2));
    const auto rule = make_rule(*cone, 128, 32, 256);
    for (auto _ : state) {
        auto rep = divergence_theorem_check_F2(*surf, rule);
        benchmark::DoNotOptimize(rep.residual);
    }
    state.SetItemsProcessed(state.iterations() * rule.interior.size());
}
BENCHMARK(BM_DivergenceCheck);
