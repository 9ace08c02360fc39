#include "scd/spectrogram.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

#include "scd/fft.hpp"
#include "scd/numeric.hpp"

namespace scd {

void StftParams::validate() const {
    if (hop_size == 0 || hop_size > window_size)
        throw std::invalid_argument("StftParams: need 0 < hop_size <= window_size");
    if (window_size > fft_size)
        throw std::invalid_argument("StftParams: need window_size <= fft_size");
    if (!is_power_of_two(fft_size))
        throw std::invalid_argument("StftParams: fft_size must be a power of two");
    if (window_size < 2)
        throw std::invalid_argument("StftParams: window_size must be >= 2");
}

Spectrogram spectrogram(const AudioBuffer& audio, const StftParams& params) {
    params.validate();
    audio.validate();
    if (audio.samples.size() < params.window_size)
        throw std::invalid_argument("spectrogram: audio shorter than one window");

    const std::size_t num_frames =
        (audio.samples.size() - params.window_size) / params.hop_size + 1;
    const std::size_t num_bins = params.fft_size / 2 + 1;
    const std::vector<double> window =
        make_window(params.window_kind, params.window_size);

    Spectrogram out;
    out.num_frames = num_frames;
    out.num_bins = num_bins;
    out.time_step_s =
        static_cast<double>(params.hop_size) / audio.sample_rate;
    out.freq_step_hz =
        static_cast<double>(audio.sample_rate) / static_cast<double>(params.fft_size);
    out.params = params;
    out.sample_rate = audio.sample_rate;
    out.power.resize(num_frames * num_bins);

    std::vector<std::complex<double>> buf(params.fft_size);
    for (std::size_t m = 0; m < num_frames; ++m) {
        const double* src = audio.samples.data() + m * params.hop_size;
        for (std::size_t n = 0; n < params.window_size; ++n)
            buf[n] = src[n] * window[n];
        for (std::size_t n = params.window_size; n < params.fft_size; ++n)
            buf[n] = 0.0;
        fft_inplace(buf);
        double* dst = out.power.data() + m * num_bins;
        for (std::size_t k = 0; k < num_bins; ++k)
            dst[k] = std::norm(buf[k]);
    }
    return out;
}

ProbFrame normalize_frame(std::span<const double> raw) {
    const double total = kahan_sum(raw);
    if (total <= 0.0)
        throw DegenerateFrameError("normalize_frame: all-zero frame");
    ProbFrame out;
    out.values.resize(raw.size());
    for (std::size_t k = 0; k < raw.size(); ++k) out.values[k] = raw[k] / total;
    return out;
}

ProbBlock normalize_block(std::span<const double> raw_rows,
                          std::size_t num_frames, std::size_t num_bins) {
    if (num_frames == 0 || raw_rows.size() != num_frames * num_bins)
        throw std::invalid_argument("normalize_block: shape mismatch");
    const double total = kahan_sum(raw_rows);
    if (total <= 0.0)
        throw DegenerateFrameError("normalize_block: all-zero block");
    ProbBlock out;
    out.num_frames = num_frames;
    out.num_bins = num_bins;
    out.values.resize(raw_rows.size());
    for (std::size_t i = 0; i < raw_rows.size(); ++i)
        out.values[i] = raw_rows[i] / total;
    return out;
}

void write_spectrogram_tsv(const Spectrogram& spec, std::ostream& out) {
    char header[160];
    std::snprintf(header, sizeof header, "# a_s=%.9g\tb_hz=%.9g\tbins=%zu\tframes=%zu\n",
                  spec.time_step_s, spec.freq_step_hz, spec.num_bins,
                  spec.num_frames);
    out << header;
    char cell[40];
    for (std::size_t m = 0; m < spec.num_frames; ++m) {
        const auto row = spec.frame(m);
        for (std::size_t k = 0; k < row.size(); ++k) {
            std::snprintf(cell, sizeof cell, "%.9g", row[k]);
            out << cell << (k + 1 < row.size() ? '\t' : '\n');
        }
    }
}

void write_spectrogram_tsv(const Spectrogram& spec, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open " + path + " for writing");
    write_spectrogram_tsv(spec, out);
    out.flush();
    if (!out)
        throw std::runtime_error("write failure on " + path);
}

} // namespace scd
