#include "scd/synth.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "scd/numeric.hpp"
#include "scd/rng.hpp"

namespace scd {

void SyntheticSpec::validate() const {
    if (segments.empty())
        throw std::invalid_argument("SyntheticSpec: needs at least one segment");
    for (const auto& seg : segments) {
        if (!(seg.duration_s > 0.0))
            throw std::invalid_argument("SyntheticSpec: segment duration must be > 0");
        if (seg.kind == Kind::sine && !(seg.freq_hz > 0.0))
            throw std::invalid_argument("SyntheticSpec: sine frequency must be > 0");
        if (seg.amplitude < 0.0)
            throw std::invalid_argument("SyntheticSpec: negative amplitude");
    }
}

SynthResult synthesize(const SyntheticSpec& spec, int sample_rate) {
    spec.validate();
    if (sample_rate <= 0)
        throw std::invalid_argument("synthesize: sample_rate must be positive");

    SynthResult out;
    out.audio.sample_rate = sample_rate;
    Rng rng(spec.seed);

    for (std::size_t si = 0; si < spec.segments.size(); ++si) {
        const auto& seg = spec.segments[si];
        const auto n = static_cast<std::size_t>(
            std::llround(seg.duration_s * sample_rate));
        switch (seg.kind) {
        case SyntheticSpec::Kind::white_noise:
            for (std::size_t i = 0; i < n; ++i)
                out.audio.samples.push_back(rng.uniform_signed(seg.amplitude));
            break;
        case SyntheticSpec::Kind::sine: {
            const double w = 2.0 * std::numbers::pi * seg.freq_hz / sample_rate;
            for (std::size_t i = 0; i < n; ++i)
                out.audio.samples.push_back(seg.amplitude *
                                            std::sin(w * static_cast<double>(i)));
            break;
        }
        case SyntheticSpec::Kind::silence:
            out.audio.samples.insert(out.audio.samples.end(), n, 0.0);
            break;
        }
        if (si + 1 < spec.segments.size())
            out.change_times_s.push_back(
                static_cast<double>(out.audio.samples.size()) / sample_rate);
    }
    return out;
}

namespace {

SyntheticSpec::Kind parse_kind(const std::string& s) {
    if (s == "white_noise") return SyntheticSpec::Kind::white_noise;
    if (s == "sine") return SyntheticSpec::Kind::sine;
    if (s == "silence") return SyntheticSpec::Kind::silence;
    throw std::invalid_argument("synthetic spec: unknown segment kind '" + s + "'");
}

} // namespace

SyntheticSpec parse_synthetic_spec(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("synthetic spec: bad JSON: ") +
                                    e.what());
    }

    SyntheticSpec spec;
    try {
        spec.seed = doc.value("seed", std::uint64_t{1});
        if (!doc.contains("segments") || !doc["segments"].is_array())
            throw std::invalid_argument("synthetic spec: missing segments[]");
        for (const auto& j : doc["segments"]) {
            SyntheticSpec::Segment seg;
            seg.kind = parse_kind(j.at("kind").get<std::string>());
            seg.duration_s = j.at("duration_s").get<double>();
            seg.amplitude = j.value("amplitude", 1.0);
            if (seg.kind == SyntheticSpec::Kind::sine)
                seg.freq_hz = j.at("freq_hz").get<double>();
            spec.segments.push_back(seg);
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("synthetic spec: ") + e.what());
    }
    spec.validate();
    return spec;
}

SyntheticSpec load_synthetic_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_synthetic_spec(ss.str());
}

std::vector<std::vector<double>> biased_densities(
    std::size_t n, const std::vector<std::size_t>& keep_counts,
    std::uint64_t seed) {
    if (n == 0)
        throw std::invalid_argument("biased_densities: n must be positive");
    for (std::size_t m : keep_counts)
        if (m < 1 || m > n)
            throw std::invalid_argument("biased_densities: keep_count out of [1, n]");

    Rng rng(seed);
    std::vector<double> base(n);
    for (double& v : base) v = std::abs(rng.normal());

    std::vector<std::vector<double>> rows;
    rows.reserve(keep_counts.size());
    for (std::size_t m : keep_counts) {
        std::vector<double> row(n);
        for (std::size_t k = 0; k < n; ++k)
            row[k] = k < m ? base[k] : base[k] / 20.0;
        const double total = kahan_sum(row);
        for (double& v : row) v /= total;
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace scd
