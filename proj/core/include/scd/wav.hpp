#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scd/audio.hpp"

namespace scd {

/// Thrown on unreadable files, non-WAV content, compressed encodings and
/// zero-length audio.
struct WavError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Decode a RIFF/WAVE file. Accepts 16-bit PCM and 32-bit IEEE float
/// (plain or WAVE_FORMAT_EXTENSIBLE), any channel count; channels are
/// averaged to mono. 16-bit codes are scaled by 1/32768 so -32768 maps
/// to -1.0 exactly.
AudioBuffer load_wav(const std::string& path);

/// Same decoder on an in-memory file image (test surface).
AudioBuffer decode_wav(const std::vector<std::uint8_t>& bytes);

/// Write a mono buffer as 16-bit PCM. Samples are scaled by 32768,
/// rounded and clamped to [-32768, 32767].
void write_wav16(const AudioBuffer& audio, const std::string& path);

} // namespace scd
