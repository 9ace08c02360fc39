#include <benchmark/benchmark.h>

#include <vector>

#include "scd/detector.hpp"
#include "scd/fft.hpp"
#include "scd/infomeasures.hpp"
#include "scd/rng.hpp"
#include "scd/spectrogram.hpp"
#include "scd/synth.hpp"

namespace bm = benchmark;
using namespace scd;

namespace {

AudioBuffer bench_audio(double seconds) {
    SyntheticSpec spec;
    spec.seed = 7;
    spec.segments = {
        {SyntheticSpec::Kind::white_noise, 0.0, seconds / 2, 1.0},
        {SyntheticSpec::Kind::sine, 440.0, seconds / 2, 0.8},
    };
    return synthesize(spec, 8000).audio;
}

std::vector<double> bench_density(std::size_t n) {
    Rng rng(13);
    std::vector<double> p(n);
    double total = 0.0;
    for (double& v : p) total += v = rng.uniform();
    for (double& v : p) v /= total;
    return p;
}

void BM_Fft(bm::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    Rng rng(3);
    std::vector<std::complex<double>> data(n);
    for (auto& c : data) c = rng.uniform_signed(1.0);
    for (auto _ : state) {
        auto copy = data;
        fft_inplace(copy);
        bm::DoNotOptimize(copy);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(n));
}

void BM_Spectrogram(bm::State& state) {
    const AudioBuffer audio = bench_audio(2.0);
    for (auto _ : state) {
        const Spectrogram spec = spectrogram(audio, StftParams{});
        bm::DoNotOptimize(spec.power.data());
    }
}

void BM_RenyiEntropy(bm::State& state) {
    const auto p = bench_density(2049);
    const Alpha alpha(static_cast<double>(state.range(0)));
    for (auto _ : state) {
        const double h = renyi_entropy(std::span<const double>(p), alpha);
        bm::DoNotOptimize(h);
    }
}

void BM_RenyiDivergence(bm::State& state) {
    const auto q = floor_density(bench_density(2049), 1e-12);
    auto p_raw = bench_density(2049);
    const auto p = floor_density(p_raw, 1e-12);
    for (auto _ : state) {
        const double d = renyi_divergence(std::span<const double>(q),
                                          std::span<const double>(p),
                                          Alpha(2.0));
        bm::DoNotOptimize(d);
    }
}

void BM_DetectDivergence(bm::State& state) {
    const AudioBuffer audio = bench_audio(2.0);
    const Spectrogram spec = spectrogram(audio, StftParams{});
    DetectorConfig config;
    config.alpha = Alpha(2.0);
    config.threshold = 2.0;
    for (auto _ : state) {
        const auto events = detect_divergence(spec, config);
        bm::DoNotOptimize(events.data());
    }
}

void BM_DetectPrediction(bm::State& state) {
    const AudioBuffer audio = bench_audio(2.0);
    const Spectrogram spec = spectrogram(audio, StftParams{});
    DetectorConfig config;
    config.alpha = Alpha(2.0);
    config.threshold = 2.0;
    for (auto _ : state) {
        const auto events = detect_prediction(spec, config);
        bm::DoNotOptimize(events.data());
    }
}

} // namespace

BENCHMARK(BM_Fft)->Arg(256)->Arg(1024)->Arg(2048)->Arg(4096);
BENCHMARK(BM_Spectrogram);
BENCHMARK(BM_RenyiEntropy)->Arg(2)->Arg(30);
BENCHMARK(BM_RenyiDivergence);
BENCHMARK(BM_DetectDivergence);
BENCHMARK(BM_DetectPrediction);

BENCHMARK_MAIN();
