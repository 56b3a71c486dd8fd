#pragma once

// Command-line surface: `synth`, `spectrum`, `decompose`, `track`, `baseline`.
//
// Exit codes: 0 success, 2 invalid parameters, 3 I/O failure, 4 numerical
// guard, 1 anything else.

#include <cstdint>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "csmp/error.hpp"
#include "csmp/io.hpp"
#include "csmp/periodicity.hpp"
#include "csmp/pursuit.hpp"
#include "csmp/rft.hpp"
#include "csmp/shifted.hpp"
#include "csmp/signals.hpp"

namespace csmp::cli {

enum ExitCode : int {
    kOk = 0,
    kFailure = 1,
    kInvalid = 2,
    kIo = 3,
    kNumerical = 4,
};

struct RunConfig {
    std::string command;

    // Input: a file, or synthesis parameters when no file is given.
    std::string input;
    std::string input_format = "auto";
    std::string kind;  // cosines | chirp | noise
    std::vector<Period> periods;
    std::size_t length = 0;
    double chirp_a = 0.01 / (2.0 * std::numbers::pi);
    double t0 = 2.0;
    double t1 = 10.0;
    double dt = 0.01;
    std::uint64_t seed = 0;

    Period max_q = 0;
    std::size_t iters = 20;
    double tol = 0.0;
    bool absolute_tol = false;
    std::size_t window = 0;
    std::size_t hop = 0;
    std::size_t window_iters = 10;

    std::string output;
    bool json = false;
    std::string trace_output;
    std::string track_output;
    std::string residual_output;
    std::string reconstruction_output;
};

namespace detail {

using csmp::detail::require;

inline OutputFormat output_format(const RunConfig& c) { return c.json ? OutputFormat::Json : OutputFormat::Csv; }

/// "<stem><suffix>" next to `output`, or "" when writing to stdout.
inline std::string sibling_path(const std::string& output, const std::string& suffix) {
    if (output.empty() || output == "-") {
        return {};
    }
    const auto slash = output.find_last_of('/');
    const auto dot = output.find_last_of('.');
    const bool has_ext = dot != std::string::npos && (slash == std::string::npos || dot > slash);
    return (has_ext ? output.substr(0, dot) : output) + suffix;
}

inline std::string join(const std::vector<Period>& values) {
    std::string s;
    for (std::size_t i = 0; i < values.size(); ++i) {
        s += (i ? "," : "") + std::to_string(values[i]);
    }
    return s;
}

inline Metadata input_metadata(const RunConfig& c) {
    Metadata m{{"command", c.command}};
    if (!c.input.empty()) {
        m.emplace_back("input", c.input);
        return m;
    }
    m.emplace_back("kind", c.kind);
    if (c.kind == "cosines") {
        m.emplace_back("periods", join(c.periods));
        m.emplace_back("length", std::to_string(c.length));
    } else if (c.kind == "chirp") {
        m.emplace_back("chirp_a", format_real(c.chirp_a));
        m.emplace_back("t0", format_real(c.t0));
        m.emplace_back("t1", format_real(c.t1));
        m.emplace_back("dt", format_real(c.dt));
    } else if (c.kind == "noise") {
        m.emplace_back("length", std::to_string(c.length));
        m.emplace_back("seed", std::to_string(c.seed));
    }
    return m;
}

inline Signal synthesize(const RunConfig& c) {
    if (c.kind == "cosines") {
        require(!c.periods.empty(), "synthesis kind 'cosines' needs --periods");
        require(c.length >= 1, "synthesis kind 'cosines' needs --length >= 1");
        return Signal{sum_of_cosines(c.periods, c.length), std::nullopt};
    }
    if (c.kind == "chirp") {
        return Signal{inverse_chirp(c.chirp_a, c.t0, c.t1, c.dt), 1.0 / c.dt};
    }
    if (c.kind == "noise") {
        require(c.length >= 1, "synthesis kind 'noise' needs --length >= 1");
        return Signal{white_noise(c.length, c.seed), std::nullopt};
    }
    throw InvalidArgument("unknown synthesis kind '" + c.kind + "' (expected cosines, chirp or noise)");
}

inline Signal load_input(const RunConfig& c) {
    if (c.input.empty()) {
        require(!c.kind.empty(), "command '" + c.command + "' needs --input or a synthesis --kind");
        return synthesize(c);
    }
    SignalFormat format = SignalFormat::Auto;
    if (c.input_format == "csv") {
        format = SignalFormat::Csv;
    } else if (c.input_format == "wav") {
        format = SignalFormat::Wav;
    } else {
        require(c.input_format == "auto", "unknown input format '" + c.input_format + "'");
    }
    return read_signal(c.input, format);
}

inline void require_max_q(const RunConfig& c, std::size_t n_len) {
    require(c.max_q >= 1, "command '" + c.command + "' needs --max-period/-Q >= 1");
    require(static_cast<std::size_t>(c.max_q) <= n_len, "max period " + std::to_string(c.max_q) +
                                                            " exceeds signal length " + std::to_string(n_len));
}

inline void run_synth(const RunConfig& c) {
    require(!c.kind.empty(), "synth needs --kind (cosines, chirp or noise)");
    const Signal sig = synthesize(c);
    write_signal(sig, c.output, output_format(c), input_metadata(c));
}

inline void run_spectrum(const RunConfig& c) {
    const Signal sig = load_input(c);
    require_max_q(c, sig.samples.size());
    const PeriodEnergyTable table = exact_periodic_energies(sig.samples, c.max_q);
    Metadata meta = input_metadata(c);
    meta.emplace_back("max_q", std::to_string(c.max_q));
    meta.emplace_back("strength", "periodicity_metric");
    if (!c.json) {
        write_spectrum(to_data(table), c.output, OutputFormat::Csv, meta);
        return;
    }
    csmp::detail::with_output(c.output, [&](std::ostream& out) {
        nlohmann::ordered_json j;
        j["parameters"] = csmp::detail::metadata_json(meta);
        j.update(spectrum_json(to_data(table)));
        j["est_energies"] = rounded(std::span(table.est_energies).subspan(1));
        j["energies"] = rounded(std::span(table.energies).subspan(1));
        out << j.dump(2) << '\n';
    });
}

inline void run_decompose(const RunConfig& c) {
    const Signal sig = load_input(c);
    require_max_q(c, sig.samples.size());
    const PursuitOptions opt{c.max_q, c.iters, c.tol, c.absolute_tol ? ToleranceMode::Absolute : ToleranceMode::Relative};
    const Decomposition d = decompose(sig.samples, opt);
    const PeriodicSpectrum spectrum = periodic_spectrum(d);
    const std::vector<double> rates = error_rate_trace(d);

    Metadata meta = input_metadata(c);
    meta.emplace_back("max_q", std::to_string(c.max_q));
    meta.emplace_back("iters", std::to_string(c.iters));
    meta.emplace_back("tol", format_real(c.tol));
    meta.emplace_back("tol_mode", c.absolute_tol ? "absolute" : "relative");
    meta.emplace_back("components", std::to_string(d.components.size()));
    meta.emplace_back("stop_reason", to_string(d.stop_reason));

    if (c.json) {
        csmp::detail::with_output(c.output, [&](std::ostream& out) {
            nlohmann::ordered_json j;
            j["parameters"] = csmp::detail::metadata_json(meta);
            j.update(spectrum_json(to_data(spectrum)));
            auto& ce = j["component_energy"] = nlohmann::ordered_json::array();
            for (const auto& [q, v] : spectrum.component_energy) {
                ce.push_back({{"q", q}, {"energy", round_to_9_digits(v)}});
            }
            j["error_rate"] = rounded(rates);
            j["components"] = components_json(d);
            out << j.dump(2) << '\n';
        });
    } else {
        write_spectrum(to_data(spectrum), c.output, OutputFormat::Csv, meta);
        const std::string trace = c.trace_output.empty() ? sibling_path(c.output, ".trace.csv") : c.trace_output;
        if (!trace.empty()) {
            csmp::detail::with_output(trace, [&](std::ostream& out) { write_trace_csv(out, rates, meta); });
        }
    }
    if (!c.residual_output.empty()) {
        write_signal(Signal{d.residual, sig.sample_rate}, c.residual_output, output_format(c), meta);
    }
    if (!c.reconstruction_output.empty()) {
        write_signal(Signal{reconstruct(d), sig.sample_rate}, c.reconstruction_output, output_format(c), meta);
    }
}

inline void run_track(const RunConfig& c) {
    require(c.max_q >= 1, "track needs --max-period/-Q >= 1");
    require(c.window > static_cast<std::size_t>(c.max_q),
            "window size " + std::to_string(c.window) + " must exceed the max period " + std::to_string(c.max_q) +
                " (W > Q)");
    const Signal sig = load_input(c);
    const ShiftedOptions opt{c.max_q, c.window, c.hop, c.window_iters};
    const TimePeriodPlane plane = shifted_csmp(sig.samples, opt);
    const std::vector<TrackPoint> track = dominant_track(plane);

    Metadata meta = input_metadata(c);
    meta.emplace_back("max_q", std::to_string(c.max_q));
    meta.emplace_back("window_iters", std::to_string(c.window_iters));
    if (c.json) {
        csmp::detail::with_output(c.output, [&](std::ostream& out) {
            nlohmann::ordered_json j;
            j["parameters"] = csmp::detail::metadata_json(meta);
            j.update(plane_json(plane));
            j["track"] = track_json(track);
            out << j.dump(2) << '\n';
        });
        return;
    }
    write_plane(plane, c.output, OutputFormat::Csv, meta);
    const std::string path = c.track_output.empty() ? sibling_path(c.output, ".track.csv") : c.track_output;
    if (!path.empty()) {
        Metadata track_meta = meta;
        track_meta.emplace_back("window_size", std::to_string(plane.window_size));
        track_meta.emplace_back("hop", std::to_string(plane.hop));
        csmp::detail::with_output(path, [&](std::ostream& out) { write_track_csv(out, track, track_meta); });
    }
}

inline void run_baseline(const RunConfig& c) {
    const Signal sig = load_input(c);
    require_max_q(c, sig.samples.size());
    Metadata meta = input_metadata(c);
    meta.emplace_back("max_q", std::to_string(c.max_q));
    meta.emplace_back("strength", "rft_squared_coefficient");
    write_spectrum(to_data(rft_spectrum(sig.samples, c.max_q)), c.output, output_format(c), meta);
}

}  // namespace detail

/// Executes a parsed configuration; errors are reported on `err` and mapped
/// to exit codes.
inline int run(const RunConfig& config, std::ostream& err = std::cerr) {
    try {
        if (config.command == "synth") {
            detail::run_synth(config);
        } else if (config.command == "spectrum") {
            detail::run_spectrum(config);
        } else if (config.command == "decompose") {
            detail::run_decompose(config);
        } else if (config.command == "track") {
            detail::run_track(config);
        } else if (config.command == "baseline") {
            detail::run_baseline(config);
        } else {
            throw InvalidArgument("unknown command '" + config.command + "'");
        }
        return kOk;
    } catch (const InvalidArgument& e) {
        err << "error [invalid parameter]: " << e.what() << '\n';
        return kInvalid;
    } catch (const IoError& e) {
        err << "error [io]: " << e.what() << '\n';
        return kIo;
    } catch (const NumericalError& e) {
        err << "error [numerical]: " << e.what() << '\n';
        return kNumerical;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
}

inline void configure(CLI::App& app, RunConfig& c) {
    app.add_option("command", c.command, "synth | spectrum | decompose | track | baseline")
        ->required()
        ->check(CLI::IsMember({"synth", "spectrum", "decompose", "track", "baseline"}));

    app.add_option("--input", c.input, "Signal file (one sample per line CSV, or 16-bit PCM WAV)");
    app.add_option("--format", c.input_format, "Input format")->check(CLI::IsMember({"auto", "csv", "wav"}));

    auto* synth = "Synthesis (used when --input is absent)";
    app.add_option("--kind", c.kind, "cosines | chirp | noise")->group(synth);
    app.add_option("--periods", c.periods, "Hidden periods for 'cosines'")->delimiter(',')->group(synth);
    app.add_option("-N,--length", c.length, "Signal length for 'cosines' and 'noise'")->group(synth);
    app.add_option("--chirp-a", c.chirp_a, "Chirp constant a in sin(1/(a t))")->group(synth);
    app.add_option("--t0", c.t0, "Chirp start time [s]")->group(synth);
    app.add_option("--t1", c.t1, "Chirp end time [s]")->group(synth);
    app.add_option("--dt", c.dt, "Chirp sample step [s]")->group(synth);
    app.add_option("--seed", c.seed, "Noise seed")->group(synth);

    app.add_option("-Q,--max-period", c.max_q, "Maximum hidden period Q");
    app.add_option("-L,--iters", c.iters, "Pursuit iterations L");
    app.add_option("--tol", c.tol, "Stop when ||r||^2/||x||^2 <= tol (or ||r|| <= tol with --absolute-tol)");
    app.add_flag("--absolute-tol", c.absolute_tol, "Interpret --tol as an absolute residual norm");
    app.add_option("-W,--window", c.window, "Window size W for 'track' (must exceed Q)");
    app.add_option("-H,--hop", c.hop, "Hop between windows (default W/4)");
    app.add_option("--window-iters", c.window_iters, "Pursuit iterations per window");

    app.add_option("--output", c.output, "Output file (stdout when omitted)");
    app.add_flag("--json", c.json, "Write JSON instead of CSV");
    app.add_option("--trace", c.trace_output, "Error-rate trace CSV for 'decompose' (default <output>.trace.csv)");
    app.add_option("--track", c.track_output, "Dominant track CSV for 'track' (default <output>.track.csv)");
    app.add_option("--residual", c.residual_output, "Write the final residual signal");
    app.add_option("--reconstruction", c.reconstruction_output, "Write the reconstructed periodic part");
}

/// Parses argv and runs; CLI parse errors exit with code 2.
inline int main(int argc, const char* const* argv) {
    CLI::App app{"Hidden-period decomposition by conjugate subspace matching pursuit", "csmp"};
    RunConfig config;
    configure(app, config);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInvalid;
    }
    return run(config);
}

}  // namespace csmp::cli
