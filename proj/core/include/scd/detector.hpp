#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "scd/audio.hpp"
#include "scd/events.hpp"
#include "scd/infomeasures.hpp"
#include "scd/spectrogram.hpp"

namespace scd {

enum class TriggerMode {
    ratio_above,         // fire when score > threshold
    two_sided_deviation, // fire when |score - 1| > threshold
};

enum class RestartPolicy {
    continue_sliding,  // keep sliding through detected changes
    reset_after_event, // re-seed the window past the event frame
};

struct DetectorConfig {
    Alpha alpha{2.0};
    double threshold = 2.0;
    std::size_t mean_len = 20; // frames averaged into the mean spectrum
    std::size_t block_len = 6; // frames per prediction block
    TriggerMode trigger_mode = TriggerMode::ratio_above;
    RestartPolicy restart_policy = RestartPolicy::continue_sliding;
    double floor = 1e-12; // relative flooring ahead of divergence
    // Divergence values below this (bits) are clamped to it before the
    // consecutive-ratio score is formed. Near-stationary signals drive
    // the divergence toward zero, where raw ratios are meaningless and
    // swing by orders of magnitude.
    double chain_floor = 1e-9;
    // Merge runs of consecutive triggering frames into one event at the
    // run's first frame, carrying the run's peak score.
    bool merge_events = true;

    void validate() const;
};

/// Per-bin arithmetic mean of unit-sum frames, renormalized.
ProbFrame mean_spectrum(std::span<const std::span<const double>> rows);
ProbFrame mean_spectrum(std::span<const ProbFrame> frames);

/// One evaluated scan step: the frame under test and the trigger ratio
/// (divergence ratio d_cur/d_prev, or entropy ratio actual/predicted).
struct ScorePoint {
    std::size_t frame_index = 0;
    double score = 0.0;
};

/// Raw score traces of the pure sliding scans (no triggering, no
/// restarts); the diagnostic view of what the detectors threshold.
std::vector<ScorePoint> divergence_trace(const Spectrogram& spec,
                                         const DetectorConfig& config);
std::vector<ScorePoint> prediction_trace(const Spectrogram& spec,
                                         const DetectorConfig& config);

/// Mean-spectrum divergence detector: slide a mean over mean_len frames,
/// take the Rényi information of the next frame against it, and trigger
/// on the ratio between consecutive divergence values. The first value
/// only seeds the chain. Degenerate (all-zero) frames are skipped and
/// re-seed the chain.
std::vector<ChangeEvent> detect_divergence(const Spectrogram& spec,
                                           const DetectorConfig& config);

/// Entropy prediction detector: block entropy of block_len frames
/// predicts the (block_len+1)-frame entropy under spectral coherence;
/// trigger on actual/predicted.
std::vector<ChangeEvent> detect_prediction(const Spectrogram& spec,
                                           const DetectorConfig& config);

std::vector<ChangeEvent> run_detector(const AudioBuffer& audio,
                                      const StftParams& stft,
                                      const DetectorConfig& config,
                                      DetectionMethod method);

} // namespace scd
