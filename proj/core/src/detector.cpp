#include "scd/detector.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <optional>

#include "scd/numeric.hpp"

namespace scd {

void DetectorConfig::validate() const {
    if (!(threshold > 0.0))
        throw std::invalid_argument("DetectorConfig: threshold must be > 0");
    if (mean_len < 2)
        throw std::invalid_argument("DetectorConfig: mean_len must be >= 2");
    if (block_len < 1)
        throw std::invalid_argument("DetectorConfig: block_len must be >= 1");
    if (!(floor >= 0.0))
        throw std::invalid_argument("DetectorConfig: floor must be >= 0");
    if (!(chain_floor >= 0.0))
        throw std::invalid_argument("DetectorConfig: chain_floor must be >= 0");
}

ProbFrame mean_spectrum(std::span<const std::span<const double>> rows) {
    if (rows.size() < 2)
        throw std::invalid_argument("mean_spectrum: needs at least 2 frames");
    const std::size_t num_bins = rows.front().size();
    for (const auto& row : rows)
        if (row.size() != num_bins)
            throw std::invalid_argument("mean_spectrum: frame length mismatch");

    ProbFrame out;
    out.values.assign(num_bins, 0.0);
    for (const auto& row : rows)
        for (std::size_t k = 0; k < num_bins; ++k) out.values[k] += row[k];
    // Mean of unit-sum rows is unit-sum up to rounding; renormalize.
    const double total = kahan_sum(out.values);
    for (double& v : out.values) v /= total;
    return out;
}

ProbFrame mean_spectrum(std::span<const ProbFrame> frames) {
    std::vector<std::span<const double>> rows;
    rows.reserve(frames.size());
    for (const auto& f : frames) rows.emplace_back(f.values);
    return mean_spectrum(std::span<const std::span<const double>>(rows));
}

namespace {

bool triggered(double score, const DetectorConfig& config) {
    switch (config.trigger_mode) {
    case TriggerMode::ratio_above:
        return score > config.threshold;
    case TriggerMode::two_sided_deviation:
        return std::abs(score - 1.0) > config.threshold;
    }
    return false;
}

// How strongly a score triggers, for picking the peak of a merged run.
double trigger_strength(double score, const DetectorConfig& config) {
    return config.trigger_mode == TriggerMode::ratio_above
               ? score
               : std::abs(score - 1.0);
}

double chain_ratio(double current, double previous) {
    if (previous == 0.0 && current == 0.0) return 1.0;
    if (previous == 0.0) return std::numeric_limits<double>::infinity();
    return current / previous;
}

/// Trigger evaluation, de-bouncing and restart bookkeeping shared by the
/// two detectors. on_score() returns true when the scan must re-seed
/// past the frame.
class EventCollector {
public:
    EventCollector(const DetectorConfig& config, DetectionMethod method,
                   double time_step_s)
        : config_(config), method_(method), time_step_s_(time_step_s) {}

    bool on_score(std::size_t frame, double score) {
        if (!triggered(score, config_)) {
            flush();
            return false;
        }
        if (config_.restart_policy == RestartPolicy::reset_after_event ||
            !config_.merge_events) {
            flush();
            emit(frame, score);
            return config_.restart_policy == RestartPolicy::reset_after_event;
        }
        if (run_active_ && frame == run_last_ + 1) {
            run_last_ = frame;
            if (trigger_strength(score, config_) >
                trigger_strength(run_peak_, config_))
                run_peak_ = score;
        } else {
            flush();
            run_active_ = true;
            run_start_ = run_last_ = frame;
            run_peak_ = score;
        }
        return false;
    }

    std::vector<ChangeEvent> take() {
        flush();
        return std::move(events_);
    }

private:
    void emit(std::size_t frame, double score) {
        events_.push_back({frame, static_cast<double>(frame) * time_step_s_,
                           score, method_});
    }

    void flush() {
        if (!run_active_) return;
        run_active_ = false;
        emit(run_start_, run_peak_);
    }

    const DetectorConfig& config_;
    DetectionMethod method_;
    double time_step_s_;
    std::vector<ChangeEvent> events_;
    bool run_active_ = false;
    std::size_t run_start_ = 0;
    std::size_t run_last_ = 0;
    double run_peak_ = 0.0;
};

/// Mean-spectrum divergence scan. Calls on_score(frame, ratio) for every
/// evaluable step; a true return re-seeds the window past the frame.
/// Returns the number of degenerate frames skipped.
template <typename OnScore>
std::size_t scan_divergence(const Spectrogram& spec,
                            const DetectorConfig& config, OnScore&& on_score) {
    config.validate();
    const std::size_t m_total = spec.num_frames;
    if (m_total < config.mean_len + 2)
        throw std::invalid_argument(
            "detect_divergence: spectrogram needs at least mean_len + 2 frames");

    // Normalize every frame once; all-zero frames stay empty.
    std::vector<std::optional<ProbFrame>> probs(m_total);
    for (std::size_t m = 0; m < m_total; ++m) {
        const auto row = spec.frame(m);
        if (kahan_sum(row) > 0.0) probs[m] = normalize_frame(row);
    }

    std::size_t skipped = 0;
    std::optional<double> d_prev;
    std::vector<std::span<const double>> window_rows;
    for (std::size_t s = 0; s + config.mean_len < m_total; ++s) {
        const std::size_t incoming = s + config.mean_len;
        if (!probs[incoming]) {
            ++skipped;
            d_prev.reset();
            continue;
        }
        window_rows.clear();
        for (std::size_t m = s; m < incoming; ++m)
            if (probs[m]) window_rows.emplace_back(probs[m]->values);
        if (window_rows.size() < 2) {
            ++skipped;
            d_prev.reset();
            continue;
        }
        const ProbFrame mean =
            mean_spectrum(std::span<const std::span<const double>>(window_rows));
        const std::vector<double> q =
            floor_density(probs[incoming]->values, config.floor);
        const std::vector<double> p = floor_density(mean.values, config.floor);
        const double d_cur =
            std::max(renyi_divergence(q, p, config.alpha), config.chain_floor);
        if (d_prev) {
            if (on_score(incoming, chain_ratio(d_cur, *d_prev))) {
                s = incoming; // loop increment puts the window past the event
                d_prev.reset();
                continue;
            }
        }
        d_prev = d_cur;
    }
    return skipped;
}

template <typename OnScore>
std::size_t scan_prediction(const Spectrogram& spec,
                            const DetectorConfig& config, OnScore&& on_score) {
    config.validate();
    const std::size_t m_total = spec.num_frames;
    const std::size_t len = config.block_len;
    if (m_total < len + 1)
        throw std::invalid_argument(
            "detect_prediction: spectrogram needs at least block_len + 1 frames");

    std::size_t skipped = 0;
    for (std::size_t s = 0; s + len < m_total; ++s) {
        // Rows are contiguous in the row-major power matrix.
        const std::span<const double> rows_cur(
            spec.power.data() + s * spec.num_bins, len * spec.num_bins);
        if (kahan_sum(rows_cur) <= 0.0) {
            ++skipped;
            continue;
        }
        const std::span<const double> rows_next(
            spec.power.data() + s * spec.num_bins, (len + 1) * spec.num_bins);

        const ProbBlock cur = normalize_block(rows_cur, len, spec.num_bins);
        const ProbBlock next =
            normalize_block(rows_next, len + 1, spec.num_bins);
        const double h_cur =
            block_entropy(cur, spec.time_step_s, spec.freq_step_hz, config.alpha);
        const double h_next =
            block_entropy(next, spec.time_step_s, spec.freq_step_hz, config.alpha);
        const double predicted = predicted_entropy(h_cur, len);

        double ratio;
        if (predicted == 0.0)
            ratio = h_next == 0.0 ? 1.0
                                  : std::numeric_limits<double>::infinity();
        else
            ratio = h_next / predicted;

        if (on_score(s + len, ratio)) {
            s = s + len;
            continue;
        }
    }
    return skipped;
}

void warn_skipped(const char* who, std::size_t skipped) {
    if (skipped > 0)
        std::cerr << "scd: warning: " << who << " skipped " << skipped
                  << " degenerate frame(s)\n";
}

} // namespace

std::vector<ScorePoint> divergence_trace(const Spectrogram& spec,
                                         const DetectorConfig& config) {
    std::vector<ScorePoint> trace;
    scan_divergence(spec, config, [&](std::size_t frame, double score) {
        trace.push_back({frame, score});
        return false;
    });
    return trace;
}

std::vector<ScorePoint> prediction_trace(const Spectrogram& spec,
                                         const DetectorConfig& config) {
    std::vector<ScorePoint> trace;
    scan_prediction(spec, config, [&](std::size_t frame, double score) {
        trace.push_back({frame, score});
        return false;
    });
    return trace;
}

std::vector<ChangeEvent> detect_divergence(const Spectrogram& spec,
                                           const DetectorConfig& config) {
    EventCollector collector(config, DetectionMethod::divergence,
                             spec.time_step_s);
    const std::size_t skipped =
        scan_divergence(spec, config, [&](std::size_t frame, double score) {
            return collector.on_score(frame, score);
        });
    warn_skipped("divergence detector", skipped);
    return collector.take();
}

std::vector<ChangeEvent> detect_prediction(const Spectrogram& spec,
                                           const DetectorConfig& config) {
    EventCollector collector(config, DetectionMethod::prediction,
                             spec.time_step_s);
    const std::size_t skipped =
        scan_prediction(spec, config, [&](std::size_t frame, double score) {
            return collector.on_score(frame, score);
        });
    warn_skipped("prediction detector", skipped);
    return collector.take();
}

std::vector<ChangeEvent> run_detector(const AudioBuffer& audio,
                                      const StftParams& stft,
                                      const DetectorConfig& config,
                                      DetectionMethod method) {
    const Spectrogram spec = spectrogram(audio, stft);
    return method == DetectionMethod::divergence
               ? detect_divergence(spec, config)
               : detect_prediction(spec, config);
}

} // namespace scd
