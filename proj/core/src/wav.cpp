#include "scd/wav.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

namespace scd {
namespace {

constexpr std::uint16_t kFormatPcm = 0x0001;
constexpr std::uint16_t kFormatIeeeFloat = 0x0003;
constexpr std::uint16_t kFormatExtensible = 0xfffe;

struct Reader {
    const std::uint8_t* data;
    std::size_t size;
    std::size_t pos = 0;

    bool has(std::size_t n) const { return pos + n <= size; }

    std::uint32_t u32() {
        std::uint32_t v = static_cast<std::uint32_t>(data[pos]) |
                          static_cast<std::uint32_t>(data[pos + 1]) << 8 |
                          static_cast<std::uint32_t>(data[pos + 2]) << 16 |
                          static_cast<std::uint32_t>(data[pos + 3]) << 24;
        pos += 4;
        return v;
    }

    std::uint16_t u16() {
        std::uint16_t v = static_cast<std::uint16_t>(
            data[pos] | static_cast<std::uint16_t>(data[pos + 1]) << 8);
        pos += 2;
        return v;
    }

    bool tag(const char* fourcc) {
        bool ok = std::memcmp(data + pos, fourcc, 4) == 0;
        pos += 4;
        return ok;
    }
};

struct FmtChunk {
    std::uint16_t format = 0;
    std::uint16_t channels = 0;
    std::uint32_t sample_rate = 0;
    std::uint16_t bits_per_sample = 0;
};

double decode_sample(const std::uint8_t* p, std::uint16_t format,
                     std::uint16_t bits) {
    if (format == kFormatPcm) {
        // bits == 16, little-endian two's complement
        const std::int16_t code =
            static_cast<std::int16_t>(p[0] | static_cast<std::uint16_t>(p[1]) << 8);
        return static_cast<double>(code) / 32768.0;
    }
    // 32-bit IEEE float
    float f;
    std::memcpy(&f, p, sizeof f);
    (void)bits;
    return static_cast<double>(f);
}

} // namespace

AudioBuffer decode_wav(const std::vector<std::uint8_t>& bytes) {
    Reader r{bytes.data(), bytes.size()};
    if (!r.has(12) || !r.tag("RIFF"))
        throw WavError("not a RIFF file");
    r.u32(); // RIFF payload size, unchecked against actual length
    if (!r.tag("WAVE"))
        throw WavError("RIFF file is not WAVE");

    FmtChunk fmt;
    bool have_fmt = false;
    const std::uint8_t* payload = nullptr;
    std::size_t payload_size = 0;

    while (r.has(8)) {
        char id[4];
        std::memcpy(id, r.data + r.pos, 4);
        r.pos += 4;
        const std::uint32_t chunk_size = r.u32();
        if (!r.has(chunk_size))
            throw WavError("truncated chunk in WAV file");

        if (std::memcmp(id, "fmt ", 4) == 0) {
            if (chunk_size < 16)
                throw WavError("malformed fmt chunk");
            Reader f{r.data + r.pos, chunk_size};
            fmt.format = f.u16();
            fmt.channels = f.u16();
            fmt.sample_rate = f.u32();
            f.u32(); // byte rate
            f.u16(); // block align
            fmt.bits_per_sample = f.u16();
            if (fmt.format == kFormatExtensible) {
                // cbSize(2) + valid bits(2) + channel mask(4) + GUID; the
                // first two GUID bytes carry the actual format code.
                if (chunk_size < 40)
                    throw WavError("malformed extensible fmt chunk");
                f.pos += 8;
                fmt.format = f.u16();
            }
            have_fmt = true;
        } else if (std::memcmp(id, "data", 4) == 0) {
            payload = r.data + r.pos;
            payload_size = chunk_size;
        }
        // Chunks are word-aligned: odd sizes carry one pad byte.
        r.pos += chunk_size + (chunk_size & 1);
    }

    if (!have_fmt)
        throw WavError("missing fmt chunk");
    if (payload == nullptr)
        throw WavError("missing data chunk");
    if (fmt.channels == 0 || fmt.sample_rate == 0)
        throw WavError("malformed fmt chunk");

    std::size_t bytes_per_sample;
    if (fmt.format == kFormatPcm && fmt.bits_per_sample == 16) {
        bytes_per_sample = 2;
    } else if (fmt.format == kFormatIeeeFloat && fmt.bits_per_sample == 32) {
        bytes_per_sample = 4;
    } else {
        throw WavError("unsupported WAV encoding (want 16-bit PCM or 32-bit float)");
    }

    const std::size_t frame_bytes = bytes_per_sample * fmt.channels;
    const std::size_t num_frames = payload_size / frame_bytes;
    if (num_frames == 0)
        throw WavError("zero-length audio");

    AudioBuffer out;
    out.sample_rate = static_cast<int>(fmt.sample_rate);
    out.samples.resize(num_frames);
    for (std::size_t i = 0; i < num_frames; ++i) {
        double acc = 0.0;
        const std::uint8_t* p = payload + i * frame_bytes;
        for (std::uint16_t c = 0; c < fmt.channels; ++c)
            acc += decode_sample(p + c * bytes_per_sample, fmt.format,
                                 fmt.bits_per_sample);
        out.samples[i] = acc / fmt.channels;
    }
    return out;
}

AudioBuffer load_wav(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw WavError("cannot open " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (in.bad())
        throw WavError("read failure on " + path);
    return decode_wav(bytes);
}

void write_wav16(const AudioBuffer& audio, const std::string& path) {
    audio.validate();
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw WavError("cannot open " + path + " for writing");

    const std::uint32_t data_bytes =
        static_cast<std::uint32_t>(audio.samples.size() * 2);
    auto put_u32 = [&](std::uint32_t v) {
        char b[4] = {static_cast<char>(v), static_cast<char>(v >> 8),
                     static_cast<char>(v >> 16), static_cast<char>(v >> 24)};
        out.write(b, 4);
    };
    auto put_u16 = [&](std::uint16_t v) {
        char b[2] = {static_cast<char>(v), static_cast<char>(v >> 8)};
        out.write(b, 2);
    };

    const std::uint32_t rate = static_cast<std::uint32_t>(audio.sample_rate);
    out.write("RIFF", 4);
    put_u32(36 + data_bytes);
    out.write("WAVE", 4);
    out.write("fmt ", 4);
    put_u32(16);
    put_u16(kFormatPcm);
    put_u16(1); // mono
    put_u32(rate);
    put_u32(rate * 2); // byte rate
    put_u16(2);        // block align
    put_u16(16);
    out.write("data", 4);
    put_u32(data_bytes);

    for (double s : audio.samples) {
        long code = std::lround(s * 32768.0);
        code = std::clamp(code, -32768l, 32767l);
        put_u16(static_cast<std::uint16_t>(static_cast<std::int16_t>(code)));
    }
    if (!out)
        throw WavError("write failure on " + path);
}

} // namespace scd
