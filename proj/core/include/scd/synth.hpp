#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scd/audio.hpp"

namespace scd {

/// Ground-truth test signal: a list of segments whose boundaries are the
/// true change times.
struct SyntheticSpec {
    enum class Kind { white_noise, sine, silence };

    struct Segment {
        Kind kind = Kind::white_noise;
        double freq_hz = 0.0; // sine only
        double duration_s = 0.0;
        double amplitude = 1.0;
    };

    std::vector<Segment> segments;
    std::uint64_t seed = 1;

    void validate() const;
};

struct SynthResult {
    AudioBuffer audio;
    /// Segment boundaries in seconds, excluding t=0 and the end.
    std::vector<double> change_times_s;
};

/// Concatenate the spec's segments at the given rate. White noise is
/// uniform on [-amplitude, amplitude] from the seeded Rng; sine segments
/// restart at phase 0. Deterministic for a fixed spec.
SynthResult synthesize(const SyntheticSpec& spec, int sample_rate);

/// Parse the JSON document form: {"seed": 7, "segments": [{"kind":
/// "sine", "freq_hz": 440, "duration_s": 1.0, "amplitude": 0.8}, ...]}.
SyntheticSpec parse_synthetic_spec(const std::string& json_text);
SyntheticSpec load_synthetic_spec(const std::string& path);

/// Density family for the alpha-sweep experiment: |normal| draws of
/// length n, entries past keep_count attenuated by 1/20, then normalized
/// to unit sum. Rows are returned for each requested keep_count.
std::vector<std::vector<double>> biased_densities(
    std::size_t n, const std::vector<std::size_t>& keep_counts,
    std::uint64_t seed);

} // namespace scd
