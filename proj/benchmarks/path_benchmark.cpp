#include <benchmark/benchmark.h>

#include "grpnet/gaussian.hpp"
#include "grpnet/multinomial.hpp"
#include "grpnet/objective.hpp"
#include "grpnet/path.hpp"
#include "grpnet/simulate.hpp"

namespace {

grpnet::SyntheticData make_data(benchmark::State& state, grpnet::Index classes)
{
    grpnet::SimulationSpec spec;
    spec.n = 100;
    spec.p = state.range(0);
    spec.classes = classes;
    spec.seed = 42;
    return grpnet::gen_synthetic(spec);
}

void BM_GaussianPath(benchmark::State& state)
{
    const auto data = make_data(state, 5);
    grpnet::PathConfig config;
    config.family = grpnet::Family::Gaussian;
    for (auto _ : state) {
        auto path = grpnet::fit_path(data.x, data.y_gaussian, config);
        benchmark::DoNotOptimize(path);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_GaussianPath)->RangeMultiplier(4)->Range(100, 6400)->Unit(benchmark::kMillisecond)->Complexity();

void BM_MultinomialPath(benchmark::State& state)
{
    const auto data = make_data(state, 5);
    grpnet::PathConfig config;
    config.family = grpnet::Family::Multinomial;
    config.screening = state.range(1) != 0;
    for (auto _ : state) {
        auto path = grpnet::fit_path(data.x, data.y_multinomial, config);
        benchmark::DoNotOptimize(path);
    }
}
BENCHMARK(BM_MultinomialPath)
    ->ArgsProduct({{100, 1000}, {0, 1}})
    ->ArgNames({"p", "screen"})
    ->Unit(benchmark::kMillisecond);

void BM_GaussianSingleLambda(benchmark::State& state)
{
    const auto data = make_data(state, 5);
    const auto xc = grpnet::center_design(data.x);
    const double lmax = grpnet::lambda_max(xc, data.y_gaussian, grpnet::Family::Gaussian, 1.0);
    const grpnet::PenaltySpec spec(0.2 * lmax, 1.0);
    for (auto _ : state) {
        auto fit = grpnet::fit_gaussian(xc, data.y_gaussian, spec);
        benchmark::DoNotOptimize(fit);
    }
}
BENCHMARK(BM_GaussianSingleLambda)->Arg(1000)->Arg(5000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
