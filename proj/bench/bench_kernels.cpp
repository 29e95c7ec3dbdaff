/// Serial reference vs OpenMP kernels on representative grid sizes.
/// Run: ./build/bench/bench_kernels

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "linbgk/basis.hpp"
#include "linbgk/kernels.hpp"

using namespace linbgk;

namespace {

struct BenchData {
  int nx, nv;
  std::vector<double> in, out, speeds;
  CollisionBasis basis;

  BenchData(int nx_, int nv_)
      : nx(nx_),
        nv(nv_),
        in(static_cast<size_t>(nx_) * nv_),
        out(in.size()),
        basis(build_collision_basis(make_params(1.0, 0.0, 1.0, 0.0, 0.0),
                                    centered_velocity_grid(nv_, 0.0, 8.0), 1)) {
    std::mt19937_64 rng(42);
    for (auto& x : in) x = static_cast<double>(rng() >> 11) * 0x1.0p-52 - 1.0;
    speeds = basis.grid.nodes;
  }

  kernels::TransportArgs transport_args(kernels::Scheme s) const {
    return {nx, nv, speeds.data(), 1e-3, 2.0 * 3.14159265358979 / nx, s};
  }

  kernels::RelaxArgs relax_args() const {
    return {nx,
            nv,
            {basis.chi[0].data(), basis.chi[1].data(), basis.chi[2].data()},
            basis.weight_row.data(),
            1e-3,
            1.0,
            nullptr};
  }
};

void bm_transport_serial(benchmark::State& state) {
  BenchData d(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const auto args = d.transport_args(kernels::Scheme::upwind);
  for (auto _ : state) {
    kernels::transport_serial(d.in.data(), d.out.data(), args);
    benchmark::ClobberMemory();
  }
}

void bm_transport_omp(benchmark::State& state) {
  BenchData d(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const auto args = d.transport_args(kernels::Scheme::upwind);
  for (auto _ : state) {
    kernels::transport_omp(d.in.data(), d.out.data(), args);
    benchmark::ClobberMemory();
  }
}

void bm_transport_muscl_serial(benchmark::State& state) {
  BenchData d(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const auto args = d.transport_args(kernels::Scheme::muscl_minmod);
  for (auto _ : state) {
    kernels::transport_serial(d.in.data(), d.out.data(), args);
    benchmark::ClobberMemory();
  }
}

void bm_transport_muscl_omp(benchmark::State& state) {
  BenchData d(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const auto args = d.transport_args(kernels::Scheme::muscl_minmod);
  for (auto _ : state) {
    kernels::transport_omp(d.in.data(), d.out.data(), args);
    benchmark::ClobberMemory();
  }
}

void bm_relax_serial(benchmark::State& state) {
  BenchData d(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const auto args = d.relax_args();
  for (auto _ : state) {
    kernels::relax_source_serial(d.in.data(), d.out.data(), args);
    benchmark::ClobberMemory();
  }
}

void bm_relax_omp(benchmark::State& state) {
  BenchData d(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const auto args = d.relax_args();
  for (auto _ : state) {
    kernels::relax_source_omp(d.in.data(), d.out.data(), args);
    benchmark::ClobberMemory();
  }
}

void grid_sizes(benchmark::internal::Benchmark* b) {
  b->Args({128, 129})->Args({256, 257})->Args({512, 513});
}

BENCHMARK(bm_transport_serial)->Apply(grid_sizes);
BENCHMARK(bm_transport_omp)->Apply(grid_sizes);
BENCHMARK(bm_transport_muscl_serial)->Apply(grid_sizes);
BENCHMARK(bm_transport_muscl_omp)->Apply(grid_sizes);
BENCHMARK(bm_relax_serial)->Apply(grid_sizes);
BENCHMARK(bm_relax_omp)->Apply(grid_sizes);

}  // namespace

BENCHMARK_MAIN();
