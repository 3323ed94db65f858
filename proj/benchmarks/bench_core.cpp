#include "cuma/analytic.hpp"
#include "cuma/approx.hpp"
#include "cuma/montecarlo.hpp"
#include "cuma/specfun.hpp"

#include <benchmark/benchmark.h>

namespace {

cuma::ChannelStats stats_for(const char* preset, int users) {
    return cuma::channel_stats(cuma::find_preset(preset).grid, 1.0, users, 1.0);
}

void BM_Kummer1F1(benchmark::State& state) {
    const double x = static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(cuma::specfun::kummer_1f1(10.5, 0.5, x));
    }
}
BENCHMARK(BM_Kummer1F1)->Arg(1)->Arg(8)->Arg(100);

void BM_Gauss2F1(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(cuma::specfun::gauss_2f1(0.5, 2.0, 1.5, -499.0));
    }
}
BENCHMARK(BM_Gauss2F1);

void BM_SigmaSums(benchmark::State& state) {
    const auto& grid = cuma::find_preset(state.range(0) == 0 ? "6GHz-NC" : "26GHz-C").grid;
    for (auto _ : state) {
        benchmark::DoNotOptimize(cuma::sigma_sums(grid, 1.0, 0));
    }
}
BENCHMARK(BM_SigmaSums)->Arg(0)->Arg(1);

void BM_ExactPdfInphase(benchmark::State& state) {
    const auto st = stats_for("6GHz-NC", static_cast<int>(state.range(0)));
    double z = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(cuma::exact_pdf_zI(z, st));
        z = z < 10.0 ? z * 1.01 : 0.1;
    }
}
BENCHMARK(BM_ExactPdfInphase)->Arg(10)->Arg(20)->Arg(40);

void BM_ExactSirBuild(benchmark::State& state) {
    const auto st = stats_for("6GHz-NC", 20);
    for (auto _ : state) {
        cuma::ExactSir law(st, 1e-6);
        benchmark::DoNotOptimize(law.typical_scale());
    }
}
BENCHMARK(BM_ExactSirBuild)->Unit(benchmark::kMillisecond);

void BM_ExactErgodicRate(benchmark::State& state) {
    const auto st = stats_for("6GHz-NC", 20);
    const cuma::ExactSir law(st, 1e-6);
    for (auto _ : state) {
        benchmark::DoNotOptimize(cuma::ergodic_rate(20, st.sigma2_sq, law, 1e-6));
    }
}
BENCHMARK(BM_ExactErgodicRate)->Unit(benchmark::kMillisecond);

void BM_ExactSop(benchmark::State& state) {
    const cuma::ExactSir bob(stats_for("6GHz-VC", 20), 1e-6);
    const cuma::ExactSir eve(stats_for("6GHz-NC", 20), 1e-6);
    for (auto _ : state) {
        benchmark::DoNotOptimize(cuma::secrecy_outage(bob, eve, 1.0, 1e-6));
    }
}
BENCHMARK(BM_ExactSop)->Unit(benchmark::kMillisecond);

void BM_MonteCarloTrial(benchmark::State& state) {
    const char* preset = state.range(0) == 0 ? "6GHz-NC" : "6GHz-VC";
    const cuma::Simulator sim(cuma::SystemConfig{cuma::find_preset(preset).grid, 1.0, 20, 1.0});
    const cuma::SeedSpec seed{1};
    std::uint64_t t = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sim.trial(seed, t++));
    }
}
BENCHMARK(BM_MonteCarloTrial)->Arg(0)->Arg(1);

}  // namespace

BENCHMARK_MAIN();
