#include <benchmark/benchmark.h>

#include <random>

#include "scalerel/geodesic_sim.hpp"
#include "scalerel/hyperhelix.hpp"
#include "scalerel/quaternion.hpp"
#include "scalerel/velocity.hpp"

using namespace scalerel;

static void BM_BiquaternionProduct(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto draw = [&] {
    return Biquaternion(Complex(u(rng), u(rng)), Complex(u(rng), u(rng)), Complex(u(rng), u(rng)),
                        Complex(u(rng), u(rng)));
  };
  Biquaternion a = draw();
  const Biquaternion b = draw();
  for (auto _ : state) {
    a = a * b;
    a = a / std::sqrt(a.complex_norm());
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_BiquaternionProduct);

static void BM_BiquaternionInverse(benchmark::State& state) {
  const Biquaternion a(Complex(0.3, 0.1), Complex(0.5, -0.2), Complex(-0.4, 0.7), Complex(0.2, 0.2));
  for (auto _ : state) benchmark::DoNotOptimize(a.inverse());
}
BENCHMARK(BM_BiquaternionInverse);

static void BM_BqVelocity(benchmark::State& state) {
  const Vec3 p(0.1, 0.2, 0.9);
  const SpinorField f = dezael_field(CTSpinor{0.7, 0.3}.value(), CTSpinor{2.1, -0.4}.value(), p, p, 1.0,
                                     1.5, 0.5, 0.5, {});
  const SpacetimePoint pt{0.2, 0.8, -0.5, 0.3};
  for (auto _ : state) benchmark::DoNotOptimize(bq_velocity(f, pt));
}
BENCHMARK(BM_BqVelocity);

static void BM_ComponentVelocities(benchmark::State& state) {
  const Vec3 p(0.1, 0.2, 0.9);
  const SpinorField f = dezael_field(CTSpinor{0.7, 0.3}.value(), CTSpinor{2.1, -0.4}.value(), p, p, 1.0,
                                     1.5, 0.5, 0.5, {});
  const SpacetimePoint pt{0.2, 0.8, -0.5, 0.3};
  for (auto _ : state) benchmark::DoNotOptimize(component_velocities(f, pt));
}
BENCHMARK(BM_ComponentVelocities);

static void BM_IntegrateStochastic(benchmark::State& state) {
  SimConfig cfg;
  cfg.n_steps = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(integrate_stochastic(cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_IntegrateStochastic)->Arg(1000)->Arg(100000);

static void BM_IntegrateDeterministic(benchmark::State& state) {
  SimConfig cfg;
  cfg.D = 0.0;
  cfg.dt = 1e-3;
  cfg.n_steps = 10000;
  for (auto _ : state) benchmark::DoNotOptimize(integrate_deterministic(cfg));
  state.SetItemsProcessed(state.iterations() * cfg.n_steps);
}
BENCHMARK(BM_IntegrateDeterministic);

static void BM_Ensemble(benchmark::State& state) {
  SimConfig cfg;
  cfg.n_steps = 100;
  cfg.n_traj = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ensemble_run(cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0) * cfg.n_steps);
}
BENCHMARK(BM_Ensemble)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_HyperhelixIterate(benchmark::State& state) {
  const GeneratorSpec g = helical_generator();
  const int level = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(iterate(g, level));
}
BENCHMARK(BM_HyperhelixIterate)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

static void BM_MeasuredDimension(benchmark::State& state) {
  const FractalCurve c = iterate(helical_generator(), 5);
  for (auto _ : state) benchmark::DoNotOptimize(measured_dimension(c));
}
BENCHMARK(BM_MeasuredDimension)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
