// Microbenchmarks for the hot paths: the warping distance (the dominant cost
// of every verification), the smoothing filter, and a full authenticate().

#include <cstdint>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "wristauth/auth.hpp"
#include "wristauth/dsp.hpp"
#include "wristauth/dtw.hpp"
#include "wristauth/profile.hpp"
#include "wristauth/synth.hpp"

namespace {

std::vector<double> random_series(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> out(n);
    for (double& v : out) v = dist(gen);
    return out;
}

void BM_DtwDistance(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const std::vector<double> a = random_series(n, 1);
    const std::vector<double> b = random_series(n, 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(wristauth::dtw_distance(a, b));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DtwDistance)->RangeMultiplier(2)->Range(32, 512)->Complexity();

void BM_DtwBanded(benchmark::State& state) {
    const std::vector<double> a = random_series(256, 3);
    const std::vector<double> b = random_series(256, 4);
    wristauth::DtwOptions options;
    options.band = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(wristauth::dtw_distance(a, b, options));
}
BENCHMARK(BM_DtwBanded)->Arg(8)->Arg(32)->Arg(128);

void BM_DtwAlign(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const std::vector<double> a = random_series(n, 5);
    const std::vector<double> b = random_series(n, 6);
    for (auto _ : state)
        benchmark::DoNotOptimize(wristauth::dtw_align(a, b));
}
BENCHMARK(BM_DtwAlign)->Arg(128)->Arg(256);

void BM_SgSmooth(benchmark::State& state) {
    const std::vector<double> series =
        random_series(static_cast<std::size_t>(state.range(0)), 7);
    for (auto _ : state)
        benchmark::DoNotOptimize(wristauth::sg_smooth(series, 9, 2));
}
BENCHMARK(BM_SgSmooth)->Arg(128)->Arg(1024);

void BM_Authenticate(benchmark::State& state) {
    const wristauth::UserStyle style = wristauth::gen_user(42);
    std::vector<wristauth::Trial> enroll;
    for (std::uint64_t t = 0; t < 5; ++t)
        enroll.push_back(wristauth::gen_trial(style, t));
    const wristauth::Profile profile = wristauth::train(enroll);
    const wristauth::Trial probe = wristauth::gen_trial(style, 99);
    for (auto _ : state)
        benchmark::DoNotOptimize(wristauth::authenticate(probe, profile));
}
BENCHMARK(BM_Authenticate);

} // namespace

BENCHMARK_MAIN();
