#include <benchmark/benchmark.h>

#include <conegeo/surface.hpp>

using namespace conegeo;

namespace {

std::shared_ptr<PolarGraphSurface> bump_surface() {
    static auto cone = std::make_shared<ConeGeometry>(SphericalDomainSpec::cap(1.2));
    static auto surf = build_polar_graph(cone, RadialProfile::bump(3, 1.0, 0.1, 3, 1.2));
    return surf;
}

}  // namespace

static void BM_ChartJetOrder3(benchmark::State& state) {
    auto surf = bump_surface();
    const Vector2d u(0.42, 0.31);
    for (auto _ : state) {
        auto x = surf->chart().eval_at(u, 3);
        benchmark::DoNotOptimize(x);
    }
}
BENCHMARK(BM_ChartJetOrder3);

static void BM_SurfaceJets(benchmark::State& state) {
    auto surf = bump_surface();
    const Vector2d u(0.42, 0.31);
    for (auto _ : state) {
        SurfaceJets P = surf->jets(u);
        benchmark::DoNotOptimize(P.H.value());
    }
}
BENCHMARK(BM_SurfaceJets);

static void BM_CurvaturePoint(benchmark::State& state) {
    auto surf = bump_surface();
    const Vector2d u(0.42, 0.31);
    for (auto _ : state) {
        CurvaturePoint p = surf->point(u);
        benchmark::DoNotOptimize(p.H);
    }
}
BENCHMARK(BM_CurvaturePoint);
