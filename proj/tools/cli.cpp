#include "cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "scd/detector.hpp"
#include "scd/events.hpp"
#include "scd/infomeasures.hpp"
#include "scd/synth.hpp"
#include "scd/wav.hpp"

namespace scd::cli {
namespace {

struct DetectOptions {
    std::string input;
    std::string method = "divergence";
    double alpha = 2.0;
    double threshold = 0.0;
    std::string trigger = "ratio_above";
    std::string restart = "continue";
    std::size_t window = 1024;
    std::size_t hop = 256;
    std::size_t fft = 2048;
    std::size_t mean_len = 20;
    std::size_t block_len = 6;
    double floor = 1e-12;
    double chain_floor = 1e-9;
    bool no_merge = false;
    int sample_rate = 8000;
    std::optional<std::uint64_t> seed;
    std::string output;
    std::string format = "csv";
    std::string emit_spectrogram;
};

struct SweepOptions {
    std::size_t bins = 100;
    std::vector<std::size_t> m_values;
    std::vector<double> alphas;
    std::uint64_t seed = 1;
    std::string output;
};

struct SpectrogramOptions {
    std::string input;
    std::size_t window = 1024;
    std::size_t hop = 256;
    std::size_t fft = 2048;
    int sample_rate = 8000;
    std::optional<std::uint64_t> seed;
    std::string output;
};

bool looks_like_wav(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    char magic[4] = {};
    in.read(magic, 4);
    return in.gcount() == 4 && std::string_view(magic, 4) == "RIFF";
}

/// WAV files are decoded directly; anything else is read as a synthetic
/// spec JSON document and rendered at the requested rate.
AudioBuffer load_input(const std::string& path, int sample_rate,
                       std::optional<std::uint64_t> seed_override) {
    if (looks_like_wav(path)) return load_wav(path);
    SyntheticSpec spec = load_synthetic_spec(path);
    if (seed_override) spec.seed = *seed_override;
    return synthesize(spec, sample_rate).audio;
}

StftParams stft_params(std::size_t window, std::size_t hop, std::size_t fft) {
    StftParams params;
    params.window_size = window;
    params.hop_size = hop;
    params.fft_size = fft;
    params.validate();
    return params;
}

/// Runs the data phase of a command; anything thrown there is a data
/// error (exit 2), not a usage error, whatever its exception type.
template <typename Fn>
int data_phase(Fn&& fn) {
    try {
        return fn();
    } catch (const std::exception& e) {
        std::cerr << "scd: " << e.what() << "\n";
        return 2;
    }
}

int cmd_detect(const DetectOptions& opt) {
    DetectorConfig config;
    config.alpha = Alpha(opt.alpha);
    config.threshold = opt.threshold;
    config.mean_len = opt.mean_len;
    config.block_len = opt.block_len;
    config.trigger_mode = opt.trigger == "two_sided"
                              ? TriggerMode::two_sided_deviation
                              : TriggerMode::ratio_above;
    config.restart_policy = opt.restart == "reset"
                                ? RestartPolicy::reset_after_event
                                : RestartPolicy::continue_sliding;
    config.floor = opt.floor;
    config.chain_floor = opt.chain_floor;
    config.merge_events = !opt.no_merge;
    config.validate();

    const DetectionMethod method = opt.method == "prediction"
                                       ? DetectionMethod::prediction
                                       : DetectionMethod::divergence;
    const StftParams params = stft_params(opt.window, opt.hop, opt.fft);
    const EventFormat format =
        opt.format == "json" ? EventFormat::json : EventFormat::csv;

    return data_phase([&] {
        const AudioBuffer audio =
            load_input(opt.input, opt.sample_rate, opt.seed);
        const Spectrogram spec = spectrogram(audio, params);
        if (!opt.emit_spectrogram.empty())
            write_spectrogram_tsv(spec, opt.emit_spectrogram);

        const std::vector<ChangeEvent> events =
            method == DetectionMethod::divergence
                ? detect_divergence(spec, config)
                : detect_prediction(spec, config);

        char summary[200];
        std::snprintf(summary, sizeof summary,
                      "detected %zu event(s) in %.3f s (method=%s, alpha=%g, "
                      "threshold=%g)\n",
                      events.size(), audio.duration_s(), to_string(method),
                      opt.alpha, opt.threshold);
        if (opt.output.empty()) {
            write_events(events, format, std::cout);
            std::cerr << summary; // keep stdout parseable
        } else {
            write_events(events, format, opt.output);
            std::cout << summary;
        }
        return 0;
    });
}

int cmd_alpha_sweep(const SweepOptions& opt) {
    std::vector<Alpha> orders;
    orders.reserve(opt.alphas.size());
    for (double a : opt.alphas) orders.emplace_back(a);
    if (orders.empty())
        throw std::invalid_argument("alpha-sweep: empty alpha grid");

    const auto rows = biased_densities(opt.bins, opt.m_values, opt.seed);

    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!opt.output.empty()) {
        file.open(opt.output);
        if (!file)
            throw std::runtime_error("cannot open " + opt.output + " for writing");
        out = &file;
    }

    char cell[48];
    *out << "M";
    for (const Alpha& a : orders) {
        std::snprintf(cell, sizeof cell, "\t%g", a.value());
        *out << cell;
    }
    *out << "\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        *out << opt.m_values[i];
        for (const Alpha& a : orders) {
            std::snprintf(cell, sizeof cell, "\t%.9g",
                          renyi_entropy(std::span<const double>(rows[i]), a));
            *out << cell;
        }
        *out << "\n";
    }
    if (out == &file) {
        file.flush();
        if (!file)
            throw std::runtime_error("write failure on " + opt.output);
    }
    return 0;
}

int cmd_spectrogram(const SpectrogramOptions& opt) {
    const StftParams params = stft_params(opt.window, opt.hop, opt.fft);
    return data_phase([&] {
        const AudioBuffer audio =
            load_input(opt.input, opt.sample_rate, opt.seed);
        const Spectrogram spec = spectrogram(audio, params);
        if (opt.output.empty())
            write_spectrogram_tsv(spec, std::cout);
        else
            write_spectrogram_tsv(spec, opt.output);
        return 0;
    });
}

void add_stft_flags(CLI::App* cmd, std::size_t& window, std::size_t& hop,
                    std::size_t& fft) {
    cmd->add_option("--window", window, "Analysis window size in samples");
    cmd->add_option("--hop", hop, "Hop size in samples");
    cmd->add_option("--fft-size", fft, "FFT size (power of two)");
}

} // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"Spectral change detection with Renyi information measures"};
    app.require_subcommand(1);

    DetectOptions det;
    CLI::App* detect = app.add_subcommand(
        "detect", "Run a change detector over a WAV or synthetic-spec input");
    detect->add_option("--input", det.input, "WAV file or synthetic spec JSON")
        ->required();
    detect->add_option("--method", det.method, "Detector")
        ->check(CLI::IsMember({"divergence", "prediction"}));
    detect->add_option("--alpha", det.alpha, "Renyi order");
    detect->add_option("--threshold", det.threshold, "Trigger threshold")
        ->required();
    detect->add_option("--trigger", det.trigger, "Trigger semantics")
        ->check(CLI::IsMember({"ratio_above", "two_sided"}));
    detect->add_option("--restart", det.restart, "Window policy after an event")
        ->check(CLI::IsMember({"continue", "reset"}));
    add_stft_flags(detect, det.window, det.hop, det.fft);
    detect->add_option("--mean-len", det.mean_len, "Mean spectrum length in frames");
    detect->add_option("--block-len", det.block_len, "Prediction block length");
    detect->add_option("--floor", det.floor, "Relative density floor");
    detect->add_option("--chain-floor", det.chain_floor,
                       "Divergence floor (bits) for the ratio chain");
    detect->add_flag("--no-merge", det.no_merge,
                     "Emit every triggering frame instead of merged runs");
    detect->add_option("--sample-rate", det.sample_rate,
                       "Render rate for synthetic input");
    detect->add_option("--seed", det.seed, "Override the synthetic spec seed");
    detect->add_option("--output", det.output, "Event file (default: stdout)");
    detect->add_option("--format", det.format, "Event format")
        ->check(CLI::IsMember({"csv", "json"}));
    detect->add_option("--emit-spectrogram", det.emit_spectrogram,
                       "Also dump the power spectrogram as TSV");

    SweepOptions sweep;
    sweep.m_values = {10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
    sweep.alphas = {0, 0.1, 0.5, 1, 2, 3, 5, 8, 12, 20, 30};
    CLI::App* alpha_sweep = app.add_subcommand(
        "alpha-sweep",
        "Entropy of biased random densities over a grid of Renyi orders");
    alpha_sweep->add_option("--bins", sweep.bins, "Density length");
    alpha_sweep
        ->add_option("--m-values", sweep.m_values,
                     "Counts of entries kept at full scale")
        ->delimiter(',');
    alpha_sweep->add_option("--alphas", sweep.alphas, "Renyi order grid")
        ->delimiter(',');
    alpha_sweep->add_option("--seed", sweep.seed, "Generator seed");
    alpha_sweep->add_option("--output", sweep.output, "TSV file (default: stdout)");

    SpectrogramOptions sg;
    CLI::App* spectro = app.add_subcommand(
        "spectrogram", "Dump the power spectrogram of an input as TSV");
    spectro->add_option("--input", sg.input, "WAV file or synthetic spec JSON")
        ->required();
    add_stft_flags(spectro, sg.window, sg.hop, sg.fft);
    spectro->add_option("--sample-rate", sg.sample_rate,
                        "Render rate for synthetic input");
    spectro->add_option("--seed", sg.seed, "Override the synthetic spec seed");
    spectro->add_option("--output", sg.output, "TSV file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (detect->parsed()) return cmd_detect(det);
        if (alpha_sweep->parsed()) return cmd_alpha_sweep(sweep);
        return cmd_spectrogram(sg);
    } catch (const std::invalid_argument& e) {
        std::cerr << "scd: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "scd: " << e.what() << "\n";
        return 2;
    }
}

} // namespace scd::cli
