#include <random>

#include <benchmark/benchmark.h>

#include <casimir/green.hpp>
#include <casimir/oracle.hpp>
#include <casimir/self_energy.hpp>

using namespace casimir;

namespace {

void BM_GreenTensor(benchmark::State& state) {
  const Medium vacuum = Medium::vacuum();
  const Vec3 r(0.3, -0.1, 2.0);
  double omega = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(green_retarded(omega, r, Vec3::Zero(), vacuum));
    omega += 1e-9;
  }
}
BENCHMARK(BM_GreenTensor);

void BM_SigmaGG(benchmark::State& state) {
  TwoLevelAtom a;
  TwoLevelAtom b;
  b.omega = 1.3;
  b.position = Vec3(0.0, 0.0, static_cast<double>(state.range(0)) / 10.0);
  const FreeSpaceCoupling coupling(a, b, Medium::vacuum());
  for (auto _ : state) benchmark::DoNotOptimize(sigma_gg(a, b, coupling));
}
BENCHMARK(BM_SigmaGG)->Arg(1)->Arg(10)->Arg(100);

void BM_SigmaGeKeldysh(benchmark::State& state) {
  TwoLevelAtom a;
  a.state = AtomState::excited;
  TwoLevelAtom b;
  b.omega = 1.3;
  b.position = Vec3(0.0, 0.0, 5.0);
  const FreeSpaceCoupling coupling(a, b, Medium::vacuum());
  for (auto _ : state) benchmark::DoNotOptimize(sigma_ge_keldysh(a, b, coupling));
}
BENCHMARK(BM_SigmaGeKeldysh);

void BM_Rspt4(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto s = oracle::random_system(rng, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(oracle::rspt4_ground_shift(s.model, s.a, s.b));
}
BENCHMARK(BM_Rspt4)->Arg(4)->Arg(8)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
