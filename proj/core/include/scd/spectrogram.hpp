#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "scd/audio.hpp"
#include "scd/window.hpp"

namespace scd {

/// Analysis parameters. Defaults are a 1024-sample Hamming window with
/// 768 samples of overlap (hop 256) and a 2048-point FFT.
struct StftParams {
    std::size_t window_size = 1024;
    std::size_t hop_size = 256;
    std::size_t fft_size = 2048;
    WindowKind window_kind = WindowKind::hamming;

    void validate() const;
};

/// Thrown when a frame or block to be normalized carries no energy.
struct DegenerateFrameError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Unit-sum normalized analysis frame: a discrete probability density
/// over the retained frequency bins.
struct ProbFrame {
    std::vector<double> values;
};

/// Jointly normalized block of contiguous frames; all num_frames *
/// num_bins entries sum to one.
struct ProbBlock {
    std::vector<double> values; // row-major, num_frames x num_bins
    std::size_t num_frames = 0;
    std::size_t num_bins = 0;
};

/// Power spectrogram: squared-magnitude one-sided spectra of windowed,
/// zero-padded frames. time_step_s and freq_step_hz are the sampling
/// lattice steps (hop/rate and rate/fft_size).
struct Spectrogram {
    std::vector<double> power; // row-major, num_frames x num_bins
    std::size_t num_frames = 0;
    std::size_t num_bins = 0; // fft_size / 2 + 1
    double time_step_s = 0.0;
    double freq_step_hz = 0.0;
    StftParams params;
    int sample_rate = 0;

    std::span<const double> frame(std::size_t m) const {
        return {power.data() + m * num_bins, num_bins};
    }
};

/// Frame m covers samples [m*hop, m*hop + window); trailing samples that
/// do not fill a window are dropped. The transform is the unnormalized
/// forward DFT; bins 0..fft_size/2 are retained.
Spectrogram spectrogram(const AudioBuffer& audio, const StftParams& params);

/// Divide a raw power row by its sum. Throws DegenerateFrameError on an
/// all-zero row.
ProbFrame normalize_frame(std::span<const double> raw);

/// Divide every entry of a block of raw rows by the joint sum.
ProbBlock normalize_block(std::span<const double> raw_rows,
                          std::size_t num_frames, std::size_t num_bins);

/// TSV dump: a `# a_s=... b_hz=... bins=... frames=...` header line, then
/// one frame of tab-separated power values per line.
void write_spectrogram_tsv(const Spectrogram& spec, std::ostream& out);
void write_spectrogram_tsv(const Spectrogram& spec, const std::string& path);

} // namespace scd
