#include <benchmark/benchmark.h>

#include "lipnn/lipschitz/barrier.hpp"
#include "lipnn/linalg/cholesky.hpp"

namespace {

using namespace lipnn;

struct Fixture {
    MlpParams params;
    Multipliers mult;
    LipschitzTarget target{4.0};
    BlockTridiagonalSymmetric M;
    Matrix dense;

    explicit Fixture(int depth, int width) {
        std::vector<Index> dims(depth + 2, width);
        params = glorot_init(dims, {ActivationKind::Tanh}, 42);
        mult = Multipliers::constant(params, 1.0);
        params = feasible_init(params, mult, target);
        M = assemble_cert_matrix(params, mult, target);
        dense = M.assemble();
    }
};

void BM_BlockCholesky(benchmark::State& state) {
    Fixture f(int(state.range(0)), int(state.range(1)));
    for (auto _ : state) {
        auto c = block_cholesky(f.M);
        benchmark::DoNotOptimize(c);
    }
}

void BM_DenseCholesky(benchmark::State& state) {
    Fixture f(int(state.range(0)), int(state.range(1)));
    for (auto _ : state) {
        auto L = dense_cholesky(f.dense);
        benchmark::DoNotOptimize(L);
    }
}

void BM_SelectedInverse(benchmark::State& state) {
    Fixture f(int(state.range(0)), int(state.range(1)));
    const auto c = block_cholesky(f.M);
    for (auto _ : state) {
        auto inv = selected_inverse(c);
        benchmark::DoNotOptimize(inv);
    }
}

void BM_DenseSelectedInverse(benchmark::State& state) {
    Fixture f(int(state.range(0)), int(state.range(1)));
    for (auto _ : state) {
        auto inv = selected_inverse_dense(f.M);
        benchmark::DoNotOptimize(inv);
    }
}

void BM_BarrierBlocked(benchmark::State& state) {
    Fixture f(int(state.range(0)), int(state.range(1)));
    for (auto _ : state) {
        auto eval = barrier_loss_and_grads(f.params, f.mult, f.target, 1e-3);
        benchmark::DoNotOptimize(eval);
    }
}

void BM_BarrierDense(benchmark::State& state) {
    Fixture f(int(state.range(0)), int(state.range(1)));
    for (auto _ : state) {
        auto eval = barrier_loss_and_grads_dense(f.params, f.mult, f.target, 1e-3);
        benchmark::DoNotOptimize(eval);
    }
}

void shapes(benchmark::internal::Benchmark* b) {
    b->Args({2, 16})->Args({4, 32})->Args({10, 64})->Args({16, 96});
}

BENCHMARK(BM_BlockCholesky)->Apply(shapes)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_DenseCholesky)->Apply(shapes)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SelectedInverse)->Apply(shapes)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_DenseSelectedInverse)->Apply(shapes)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_BarrierBlocked)->Apply(shapes)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_BarrierDense)->Apply(shapes)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
