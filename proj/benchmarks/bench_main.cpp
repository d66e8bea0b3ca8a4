#include <benchmark/benchmark.h>

#include "jacobilab/multiplier.hpp"
#include "jacobilab/specfun.hpp"

using namespace jacobilab;

namespace {

const JacobiParams& params() {
  static const JacobiParams p(1.4, 0.25);
  return p;
}

void bm_phi_hypergeometric(benchmark::State& state) {
  const double lam = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(phi_real(params(), lam, 0.8));
}
BENCHMARK(bm_phi_hypergeometric)->Name("phi_hypergeometric")->Arg(2)->Arg(10)->Arg(40);

void bm_phi_harish_chandra(benchmark::State& state) {
  const auto coeffs = hc_coeffs(params(), Complex(25.0, 0.0), 48);
  for (auto _ : state) benchmark::DoNotOptimize(phi_hc(params(), coeffs, 25.0, 2.5));
}
BENCHMARK(bm_phi_harish_chandra)->Name("phi_harish_chandra_cached");

void bm_phi_bessel_route(benchmark::State& state) {
  const auto coeffs = bessel_coeffs(params(), 0.6, 6);
  for (auto _ : state) benchmark::DoNotOptimize(phi_bessel(params(), coeffs, 120.0));
}
BENCHMARK(bm_phi_bessel_route)->Name("phi_bessel_cached");

void bm_bessel_j(benchmark::State& state) {
  const double x = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(specfun::bessel_j(1.4, x));
}
BENCHMARK(bm_bessel_j)->Name("bessel_j")->Arg(1)->Arg(20)->Arg(500);

void bm_plancherel_density(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(plancherel_density(params(), 350.0));
}
BENCHMARK(bm_plancherel_density)->Name("plancherel_density");

void bm_phi_table(benchmark::State& state) {
  const auto rg = make_radial_grid(params(), 6.0, 4, 8);
  const auto sg = make_spectral_grid(params(), 20.0, 4, 8);
  for (auto _ : state) {
    auto table = phi_table(params(), sg->nodes, rg->nodes, 1);
    benchmark::DoNotOptimize(table.data());
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                          static_cast<int64_t>(rg->nodes.size() * sg->nodes.size()));
}
BENCHMARK(bm_phi_table)->Name("phi_table_dense")->Unit(benchmark::kMillisecond);

void bm_forward_transform(benchmark::State& state) {
  const auto rg = make_radial_grid(params(), 6.0, 4, 8);
  const auto sg = make_spectral_grid(params(), 20.0, 4, 8);
  const GridFunction f = sample(rg, [](double t) {
    const double u = (t - 2.0) / 0.8;
    return std::exp(-u * u);
  });
  for (auto _ : state) {
    auto fh = forward(params(), f, sg, 1);
    benchmark::DoNotOptimize(fh.values.data());
  }
  state.SetLabel("nodes " + std::to_string(rg->nodes.size()) + "x" +
                 std::to_string(sg->nodes.size()));
}
BENCHMARK(bm_forward_transform)->Name("forward_transform")->Unit(benchmark::kMillisecond);

void bm_kernel_value(benchmark::State& state) {
  const auto sg = make_spectral_grid(params(), 10.0, 6, 12, std::vector<double>{10.0});
  for (auto _ : state)
    benchmark::DoNotOptimize(kernel_value(params(), 0.7, 3.0, 10.0, *sg));
}
BENCHMARK(bm_kernel_value)->Name("kernel_value")->Unit(benchmark::kMicrosecond);

void bm_lorentz_norm(benchmark::State& state) {
  const auto rg = make_radial_grid(params(), 8.0, 8, 12);
  const GridFunction f = sample(rg, [](double t) { return std::exp(-t) * std::sin(3.0 * t); });
  for (auto _ : state) benchmark::DoNotOptimize(lorentz_norm(f, 1.5, 1.0));
}
BENCHMARK(bm_lorentz_norm)->Name("lorentz_norm");

}  // namespace

BENCHMARK_MAIN();
