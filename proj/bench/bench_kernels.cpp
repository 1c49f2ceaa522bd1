// Serial reference vs OpenMP kernels on wall-like fields.
#include <cmath>
#include <vector>

#include <benchmark/benchmark.h>

#include "wallforge/kernels.hpp"

using namespace wallforge;
namespace k = wallforge::kernels;

namespace {

struct Fields {
  std::vector<double> u, v, a, b, band;
  double h;

  explicit Fields(std::size_t n)
      : u(n), v(n), a(n), b(n), band(static_cast<std::size_t>(k::kBandLd) * 2 * (n - 2)), h(40.0 / double(n - 1)) {
    for (std::size_t i = 0; i < n; ++i) {
      const double x = -20.0 + h * double(i);
      u[i] = 0.5 * (1.0 + std::tanh(x));
      v[i] = 0.5 * (1.0 - std::tanh(x));
    }
  }
};

const CouplingParams kMu(3.0);
constexpr double kEps = 0.05;

template <bool Parallel>
void BM_Energy(benchmark::State& state) {
  Fields f(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    double e = Parallel ? k::energy(f.u, f.v, f.h, kEps, kMu) : k::serial::energy(f.u, f.v, f.h, kEps, kMu);
    benchmark::DoNotOptimize(e);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_Residual(benchmark::State& state) {
  Fields f(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    if (Parallel) {
      k::el_residual(f.u, f.v, f.h, kEps, kMu, f.a, f.b);
    } else {
      k::serial::el_residual(f.u, f.v, f.h, kEps, kMu, f.a, f.b);
    }
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_Gradient(benchmark::State& state) {
  Fields f(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    if (Parallel) {
      k::energy_gradient(f.u, f.v, f.h, kEps, kMu, f.a, f.b);
    } else {
      k::serial::energy_gradient(f.u, f.v, f.h, kEps, kMu, f.a, f.b);
    }
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_Jacobian(benchmark::State& state) {
  Fields f(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    if (Parallel) {
      k::assemble_jacobian(f.u, f.v, f.h, kEps, kMu, f.band);
    } else {
      k::serial::assemble_jacobian(f.u, f.v, f.h, kEps, kMu, f.band);
    }
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

#define WALLFORGE_BENCH_PAIR(fn)                                                   \
  BENCHMARK(fn<false>)->Name(#fn "/serial")->RangeMultiplier(8)->Range(1 << 12, 1 << 21); \
  BENCHMARK(fn<true>)->Name(#fn "/omp")->RangeMultiplier(8)->Range(1 << 12, 1 << 21)

WALLFORGE_BENCH_PAIR(BM_Energy);
WALLFORGE_BENCH_PAIR(BM_Residual);
WALLFORGE_BENCH_PAIR(BM_Gradient);
WALLFORGE_BENCH_PAIR(BM_Jacobian);

BENCHMARK_MAIN();
