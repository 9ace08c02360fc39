#pragma once

#include <stdexcept>
#include <vector>

namespace scd {

/// Mono sample buffer. Amplitudes are dimensionless with nominal range
/// [-1, 1]; sample_rate is in Hz.
struct AudioBuffer {
    std::vector<double> samples;
    int sample_rate = 0;

    double duration_s() const {
        return static_cast<double>(samples.size()) / sample_rate;
    }

    void validate() const {
        if (sample_rate <= 0)
            throw std::invalid_argument("AudioBuffer: sample_rate must be positive");
        if (samples.empty())
            throw std::invalid_argument("AudioBuffer: empty sample buffer");
    }
};

} // namespace scd
