#include <benchmark/benchmark.h>

#include "ldrwe/config.hpp"
#include "ldrwe/entropy.hpp"
#include "ldrwe/path_oracle.hpp"
#include "ldrwe/quenched_rate.hpp"
#include "ldrwe/tilted_measures.hpp"

using namespace ldrwe;

namespace {

Eigen::VectorXd vec1(double x) {
    Eigen::VectorXd v(1);
    v << x;
    return v;
}

const StepSet kWalk1d(1, {{1}, {-1}});
const StepKernel kUniform{{0.5, 0.5}};

void BM_endpoint_law(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(endpoint_law(kUniform, kWalk1d, n));
    }
}

void BM_endpoint_law_3d(benchmark::State& state) {
    auto cfg = preset("nn-3d");
    StepSet steps = cfg.make_step_set();
    StepKernel qhat = averaged_kernel(cfg.make_environment());
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(endpoint_law(qhat, steps, n));
    }
}

void BM_rate_solve(benchmark::State& state) {
    Geometry geom = Geometry::build(kWalk1d);
    for (auto _ : state) {
        benchmark::DoNotOptimize(rate_averaged(vec1(0.5), kUniform, kWalk1d, geom));
    }
}

void BM_rate_quenched(benchmark::State& state) {
    Geometry geom = Geometry::build(kWalk1d);
    auto mix = preset("symmetric-binary").make_environment().mixture;
    for (auto _ : state) {
        benchmark::DoNotOptimize(rate_quenched(vec1(0.5), mix, kWalk1d, geom));
    }
}

void BM_importance_sample(benchmark::State& state) {
    Geometry geom = Geometry::build(kWalk1d);
    const auto replicas = static_cast<std::int64_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            importance_sample(kUniform, kWalk1d, geom, 40, vec1(0.5), 0.02, replicas, 1));
    }
    state.SetItemsProcessed(state.iterations() * replicas);
}

void BM_u_n_dp(benchmark::State& state) {
    auto env = preset("symmetric-binary").make_environment();
    const int n = static_cast<int>(state.range(0));
    EnvironmentSample sample = sample_levels(env, n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(u_n_value(vec1(1.0), sample, kWalk1d, n));
    }
}

void BM_entropy_decomposition(benchmark::State& state) {
    Geometry geom = Geometry::build(kWalk1d);
    auto mix = preset("symmetric-binary").make_environment().mixture;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sc_entropy_decomposition(vec1(0.5), mix, kWalk1d, geom));
    }
}

BENCHMARK(BM_endpoint_law)->Arg(100)->Arg(400);
BENCHMARK(BM_endpoint_law_3d)->Arg(16)->Arg(32);
BENCHMARK(BM_rate_solve);
BENCHMARK(BM_rate_quenched);
BENCHMARK(BM_importance_sample)->Arg(1000)->Arg(10000);
BENCHMARK(BM_u_n_dp)->Arg(64)->Arg(256);
BENCHMARK(BM_entropy_decomposition);

} // namespace

BENCHMARK_MAIN();
