#include <hrw/calculus.hpp>
#include <hrw/hyperreal.hpp>
#include <hrw/measures.hpp>
#include <hrw/parser.hpp>
#include <hrw/partition.hpp>
#include <hrw/sums.hpp>

#include <benchmark/benchmark.h>

namespace {

void BM_SeriesInverse(benchmark::State &state)
{
    auto x = hrw::hyperreal(hrw::rational(1), hrw::rational(hrw::default_window)) - hrw::epsilon();
    for (auto _ : state)
        benchmark::DoNotOptimize(hrw::inv(x));
}
BENCHMARK(BM_SeriesInverse);

void BM_Derivative(benchmark::State &state)
{
    auto f = hrw::parse("sin(x) * exp(x^2)");
    for (auto _ : state)
        benchmark::DoNotOptimize(hrw::derivative(f, "x", hrw::rational(1, 3), 1));
}
BENCHMARK(BM_Derivative);

void BM_SequenceLimit(benchmark::State &state)
{
    auto s = hrw::parse("(1 + 1/n)^2 - 1/n");
    for (auto _ : state)
        benchmark::DoNotOptimize(hrw::seq_limit(s));
}
BENCHMARK(BM_SequenceLimit);

void BM_RiemannSum(benchmark::State &state)
{
    auto f = hrw::parse("x^2");
    auto unit = hrw::rect::unit(1);
    auto p = hrw::partition_spec::from_mesh(unit, hrw::rational(1, state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(hrw::riemann_sum(f, unit, p));
}
BENCHMARK(BM_RiemannSum)->Arg(64)->Arg(512);

void BM_MorleyStrip(benchmark::State &state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(
            hrw::morley_strip_sum(hrw::rational(1), static_cast<unsigned long>(state.range(0)), hrw::morley_edge::outer));
}
BENCHMARK(BM_MorleyStrip)->Arg(1000)->Arg(100000);

} // namespace

BENCHMARK_MAIN();
