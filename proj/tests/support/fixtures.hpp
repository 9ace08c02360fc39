#pragma once

// Frozen detection fixtures shared by the unit, calibration and
// acceptance suites. The thresholds were picked by tests/calibrate_fixture
// from the score traces on these exact seeds; rerun it before changing
// anything here.

#include <cstdint>

#include "scd/detector.hpp"
#include "scd/spectrogram.hpp"
#include "scd/synth.hpp"

namespace scdtest {

inline constexpr int kFixtureRate = 8000;
inline constexpr std::uint64_t kFixtureSeed = 20260801;
inline constexpr double kBoundaryTimeS = 1.0;

/// 1 s of uniform white noise followed by 1 s of a 440 Hz tone.
inline scd::SynthResult noise_tone_fixture() {
    scd::SyntheticSpec spec;
    spec.seed = kFixtureSeed;
    spec.segments = {
        {scd::SyntheticSpec::Kind::white_noise, 0.0, 1.0, 1.0},
        {scd::SyntheticSpec::Kind::sine, 440.0, 1.0, 0.8},
    };
    return scd::synthesize(spec, kFixtureRate);
}

/// 2 s stationary tone. 500 Hz has a 16-sample period dividing the hop,
/// so every analysis frame is bit-identical.
inline scd::SynthResult stationary_tone_fixture() {
    scd::SyntheticSpec spec;
    spec.seed = kFixtureSeed;
    spec.segments = {
        {scd::SyntheticSpec::Kind::sine, 500.0, 2.0, 0.8},
    };
    return scd::synthesize(spec, kFixtureRate);
}

inline scd::StftParams fixture_stft() {
    return scd::StftParams{}; // 1024 / 256 / 2048 defaults
}

// Calibrated trigger settings (see calibrate_fixture.cpp output). On this
// fixture the divergence chain peaks at ratio 3.36 on the boundary frame
// against a null ceiling of 1.13 in the noise region; the prediction
// deviation |ratio - 1| peaks at 0.34 against a null ceiling of 2.5e-3.
// The chain floor of 1e-3 bits silences the pure-tone tail, where raw
// divergences fall to 1e-8..1e-4 and their ratios are noise.
inline constexpr double kDivergenceThreshold = 2.0;  // ratio_above
inline constexpr double kPredictionThreshold = 0.06; // two_sided_deviation
inline constexpr double kChainFloor = 1e-3;          // bits

inline scd::DetectorConfig divergence_config() {
    scd::DetectorConfig config;
    config.alpha = scd::Alpha(2.0);
    config.threshold = kDivergenceThreshold;
    config.chain_floor = kChainFloor;
    return config;
}

inline scd::DetectorConfig prediction_config() {
    scd::DetectorConfig config;
    config.alpha = scd::Alpha(2.0);
    config.threshold = kPredictionThreshold;
    config.trigger_mode = scd::TriggerMode::two_sided_deviation;
    config.chain_floor = kChainFloor;
    return config;
}

} // namespace scdtest
