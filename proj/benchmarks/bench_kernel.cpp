#include <benchmark/benchmark.h>

#include <padicheat/negdef.hpp>
#include <padicheat/process.hpp>
#include <padicheat/semigroup.hpp>

using namespace padicheat;

namespace {

EllipticPolynomial poly_A() { return {3, 2, 2, {{{2, 0}, 1}, {{0, 2}, 3}}}; }

const std::shared_ptr<const SpectralEngine>& engine_A() {
  static const auto e = make_engine(SymbolParams(poly_A(), Rational(1, 2)));
  return e;
}

}  // namespace

static void BM_Certify(benchmark::State& state) {
  const auto f = poly_A();
  for (auto _ : state) benchmark::DoNotOptimize(certify_elliptic(f));
}
BENCHMARK(BM_Certify);

static void BM_KernelValue(benchmark::State& state) {
  const auto job = KernelJob::make(engine_A(), 1.0, 1e-10);
  const std::vector<std::int64_t> c{1, 2};
  const auto x = Vector::from_integers(3, c, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kernel_value(job, x));
}
BENCHMARK(BM_KernelValue)->Arg(0)->Arg(4)->Arg(8);

static void BM_KernelAtOrigin(benchmark::State& state) {
  const auto job = KernelJob::make(engine_A(), 1.0, 1e-10);
  for (auto _ : state) benchmark::DoNotOptimize(kernel_value(job, Vector(3, 2)));
}
BENCHMARK(BM_KernelAtOrigin);

static void BM_CosetMass(benchmark::State& state) {
  const auto job = KernelJob::make(engine_A(), 1.0, 1e-10);
  const auto c = Coset::ball(3, 2, 0).children()[4];
  for (auto _ : state) benchmark::DoNotOptimize(coset_mass(job, c));
}
BENCHMARK(BM_CosetMass);

static void BM_ChapmanResidual(benchmark::State& state) {
  const auto job = KernelJob::make(engine_A(), 1.0, 1e-10);
  for (auto _ : state) benchmark::DoNotOptimize(chapman_residual(job, 0.4, 0.6, Vector(3, 2)));
}
BENCHMARK(BM_ChapmanResidual)->Unit(benchmark::kMillisecond);

static void BM_Fourier(benchmark::State& state) {
  LocallyConstantFn u(3, 2);
  for (std::int64_t i = 0; i < state.range(0); ++i) {
    const std::vector<std::int64_t> c{i, 2 * i + 1};
    u = u + LocallyConstantFn::indicator(Coset(Vector::from_integers(3, c, 2), -1), 1.0 + static_cast<double>(i));
  }
  for (auto _ : state) benchmark::DoNotOptimize(fourier(u));
}
BENCHMARK(BM_Fourier)->Arg(1)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_SamplerDraw(benchmark::State& state) {
  const IncrementSampler s(KernelJob::make(engine_A(), 1.0, 1e-10), 2);
  const CounterRng rng(1);
  std::uint64_t draw = 0;
  for (auto _ : state) benchmark::DoNotOptimize(s.sample_leaf(rng, draw++));
}
BENCHMARK(BM_SamplerDraw);

static void BM_Negdef(benchmark::State& state) {
  const SymbolParams P(poly_A(), Rational(1));
  for (auto _ : state) benchmark::DoNotOptimize(verify_negdef(P, 20, 8, 1));
}
BENCHMARK(BM_Negdef)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
