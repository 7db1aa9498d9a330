// Serial vs OpenMP comparison for the compute kernels.

#include <benchmark/benchmark.h>

#include "gls/constructor.hpp"
#include "gls/discrepancy.hpp"
#include "gls/normality.hpp"
#include "gls/rational_lueroth.hpp"

namespace {

std::vector<std::int64_t> synthetic_digits(std::size_t n) {
    // deterministic 1/2-balanced binary digits
    std::vector<std::int64_t> d(n);
    std::uint64_t s = 0x9e3779b97f4a7c15ULL;
    for (std::size_t i = 0; i < n; ++i) {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        d[i] = static_cast<std::int64_t>(s & 1) + 1;
    }
    return d;
}

void bench_prefix_discrepancies(benchmark::State& state) {
    bool parallel = state.range(0) != 0;
    auto seq = gls::PointSeq::van_der_corput(2);
    for (auto _ : state) {
        auto rows = gls::prefix_discrepancies(seq, 2048, 32, parallel);
        benchmark::DoNotOptimize(rows);
    }
}

void bench_count_block(benchmark::State& state) {
    bool parallel = state.range(0) != 0;
    auto digits = synthetic_digits(1'000'000);
    gls::Block block{1, 2, 1};
    for (auto _ : state) {
        auto counts = gls::count_block(digits, block, parallel);
        benchmark::DoNotOptimize(counts);
    }
}

void bench_normality_report(benchmark::State& state) {
    bool parallel = state.range(0) != 0;
    auto digits = synthetic_digits(200'000);
    auto spec = gls::GlsSpec::b_adic(2);
    for (auto _ : state) {
        auto rep = gls::normality_report(digits, spec, 4, 2, parallel);
        benchmark::DoNotOptimize(rep);
    }
}

void bench_survey_family(benchmark::State& state) {
    bool parallel = state.range(0) != 0;
    auto spec = gls::GlsSpec::lueroth_classic();
    for (auto _ : state) {
        auto sv = gls::survey_family(spec, 3, 5, true, 1'000'000, parallel);
        benchmark::DoNotOptimize(sv);
    }
}

void bench_choose_cutoffs(benchmark::State& state) {
    bool parallel = state.range(0) != 0;
    auto spec = gls::GlsSpec::b_adic(2);
    auto seq = gls::PointSeq::van_der_corput(2);
    gls::CutoffSearchOptions opts;
    opts.parallel = parallel;
    for (auto _ : state) {
        auto sched = gls::choose_cutoffs(spec, seq, 6, opts);
        benchmark::DoNotOptimize(sched);
    }
}

} // namespace

BENCHMARK(bench_prefix_discrepancies)->Arg(0)->Arg(1)->ArgNames({"parallel"});
BENCHMARK(bench_count_block)->Arg(0)->Arg(1)->ArgNames({"parallel"});
BENCHMARK(bench_normality_report)->Arg(0)->Arg(1)->ArgNames({"parallel"});
BENCHMARK(bench_survey_family)->Arg(0)->Arg(1)->ArgNames({"parallel"});
BENCHMARK(bench_choose_cutoffs)->Arg(0)->Arg(1)->ArgNames({"parallel"})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
