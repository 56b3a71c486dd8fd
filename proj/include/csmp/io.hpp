#pragma once

// Signal ingestion (CSV, 16-bit PCM WAV) and plot-ready serialization of
// spectra, time-period planes and traces.
//
// CSV outputs start with `# key=value` metadata lines naming the parameters
// used, then a header row. Reals are written with 9 significant digits, and
// integral values keep a trailing ".0" so the column type stays obvious.
// JSON outputs carry the same numbers (rounded to 9 significant digits).

#include <algorithm>
#include <array>
#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "csmp/error.hpp"
#include "csmp/pursuit.hpp"
#include "csmp/rft.hpp"
#include "csmp/shifted.hpp"

namespace csmp {

struct Signal {
    std::vector<double> samples;
    std::optional<double> sample_rate;
};

enum class SignalFormat { Auto, Csv, Wav };
enum class OutputFormat { Csv, Json };

using Metadata = std::vector<std::pair<std::string, std::string>>;

/// %.9g, with ".0" appended to integral results ("2" -> "2.0").
[[nodiscard]] inline std::string format_real(double value) {
    std::array<char, 32> buf{};
    std::snprintf(buf.data(), buf.size(), "%.9g", value);
    std::string s(buf.data());
    if (std::isfinite(value) && s.find_first_of(".eE") == std::string::npos) {
        s += ".0";
    }
    return s;
}

/// The double that format_real(value) denotes.
[[nodiscard]] inline double round_to_9_digits(double value) {
    return std::isfinite(value) ? std::strtod(format_real(value).c_str(), nullptr) : value;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

inline std::optional<double> parse_real(std::string_view text) {
    const std::string s(trim(text));
    if (s.empty()) {
        return std::nullopt;
    }
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v)) {
        return std::nullopt;
    }
    return v;
}

inline std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return out;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path + "' for reading");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Runs `fn(stream)` against the named file, or stdout for "" and "-".
template <typename Fn>
void with_output(const std::string& path, Fn&& fn) {
    if (path.empty() || path == "-") {
        fn(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    fn(out);
    out.flush();
    if (!out) {
        throw IoError("failed writing '" + path + "'");
    }
}

inline void write_metadata(std::ostream& out, const Metadata& meta) {
    for (const auto& [key, value] : meta) {
        out << "# " << key << '=' << value << '\n';
    }
}

inline nlohmann::ordered_json metadata_json(const Metadata& meta) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [key, value] : meta) {
        j[key] = value;
    }
    return j;
}

/// Data rows of a CSV file: comment lines dropped, header row checked.
inline std::vector<std::pair<std::size_t, std::string_view>> csv_rows(std::string_view text,
                                                                      std::string_view header) {
    std::vector<std::pair<std::size_t, std::string_view>> rows;
    bool seen_header = false;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto end = text.find('\n', start);
        const auto line = trim(text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
        ++line_no;
        if (!line.empty() && line.front() != '#') {
            if (!seen_header) {
                if (line != header) {
                    throw IoError("line " + std::to_string(line_no) + ": expected header '" + std::string(header) + "'");
                }
                seen_header = true;
            } else {
                rows.emplace_back(line_no, line);
            }
        }
        if (end == std::string_view::npos) {
            break;
        }
        start = end + 1;
    }
    if (!seen_header) {
        throw IoError("missing header '" + std::string(header) + "'");
    }
    return rows;
}

inline std::uint32_t le32(const std::string& b, std::size_t at) {
    return static_cast<std::uint32_t>(static_cast<unsigned char>(b[at])) |
           static_cast<std::uint32_t>(static_cast<unsigned char>(b[at + 1])) << 8 |
           static_cast<std::uint32_t>(static_cast<unsigned char>(b[at + 2])) << 16 |
           static_cast<std::uint32_t>(static_cast<unsigned char>(b[at + 3])) << 24;
}

inline std::uint16_t le16(const std::string& b, std::size_t at) {
    return static_cast<std::uint16_t>(static_cast<unsigned char>(b[at]) |
                                      static_cast<unsigned char>(b[at + 1]) << 8);
}

inline void put16(std::string& b, std::uint16_t v) {
    b.push_back(static_cast<char>(v & 0xff));
    b.push_back(static_cast<char>(v >> 8));
}

inline void put32(std::string& b, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) {
        b.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
    }
}

}  // namespace detail

/// One real sample per line; '#' comment lines and a non-numeric first row
/// (header) are skipped.
[[nodiscard]] inline Signal parse_csv_signal(std::string_view text) {
    Signal sig;
    bool first_row = true;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start < text.size()) {
        const auto end = text.find('\n', start);
        const auto line = detail::trim(
            text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
        ++line_no;
        start = end == std::string_view::npos ? text.size() : end + 1;
        if (line.empty() || line.front() == '#') {
            continue;
        }
        const auto value = detail::parse_real(line);
        if (!value) {
            if (first_row) {
                first_row = false;
                continue;
            }
            throw IoError("malformed CSV sample at line " + std::to_string(line_no) + ": '" + std::string(line) + "'");
        }
        first_row = false;
        sig.samples.push_back(*value);
    }
    if (sig.samples.empty()) {
        throw IoError("signal file contains no samples");
    }
    return sig;
}

/// 16-bit PCM only (plain or WAVE_FORMAT_EXTENSIBLE); the first channel is
/// kept and scaled by 1/32768.
[[nodiscard]] inline Signal parse_wav_signal(const std::string& bytes) {
    if (bytes.size() < 12 || bytes.compare(0, 4, "RIFF") != 0 || bytes.compare(8, 4, "WAVE") != 0) {
        throw IoError("not a RIFF/WAVE file");
    }
    std::optional<std::uint16_t> channels;
    std::uint32_t rate = 0;
    std::size_t pos = 12;
    while (pos + 8 <= bytes.size()) {
        const std::string id = bytes.substr(pos, 4);
        const std::uint32_t size = detail::le32(bytes, pos + 4);
        const std::size_t body = pos + 8;
        if (body + size > bytes.size() && id != "data") {
            throw IoError("truncated WAV chunk '" + id + "'");
        }
        if (id == "fmt ") {
            if (size < 16) {
                throw IoError("WAV fmt chunk too short");
            }
            std::uint16_t format = detail::le16(bytes, body);
            const std::uint16_t bits = detail::le16(bytes, body + 14);
            if (format == 0xFFFE && size >= 40) {
                format = detail::le16(bytes, body + 24);  // sub-format GUID starts with the tag
            }
            if (format != 1 || bits != 16) {
                throw IoError("unsupported WAV encoding (format " + std::to_string(format) + ", " +
                              std::to_string(bits) + " bits): only 16-bit PCM is accepted");
            }
            channels = detail::le16(bytes, body + 2);
            rate = detail::le32(bytes, body + 4);
            if (*channels == 0) {
                throw IoError("WAV file declares zero channels");
            }
        } else if (id == "data") {
            if (!channels) {
                throw IoError("WAV data chunk precedes fmt chunk");
            }
            const std::size_t available = std::min<std::size_t>(size, bytes.size() - body);
            const std::size_t frame = 2u * *channels;
            Signal sig;
            sig.sample_rate = static_cast<double>(rate);
            sig.samples.reserve(available / frame);
            for (std::size_t at = body; at + frame <= body + available; at += frame) {
                const auto raw = static_cast<std::int16_t>(detail::le16(bytes, at));
                sig.samples.push_back(static_cast<double>(raw) / 32768.0);
            }
            if (sig.samples.empty()) {
                throw IoError("WAV file contains no samples");
            }
            return sig;
        }
        pos = body + size + (size & 1u);
    }
    throw IoError("WAV file has no data chunk");
}

[[nodiscard]] inline SignalFormat detect_format(const std::string& path) {
    const auto dot = path.find_last_of('.');
    std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    return ext == "wav" ? SignalFormat::Wav : SignalFormat::Csv;
}

[[nodiscard]] inline Signal read_signal(const std::string& path, SignalFormat format = SignalFormat::Auto) {
    if (format == SignalFormat::Auto) {
        format = detect_format(path);
    }
    const std::string bytes = detail::read_file(path);
    if (bytes.empty()) {
        throw IoError("'" + path + "' is empty");
    }
    return format == SignalFormat::Wav ? parse_wav_signal(bytes) : parse_csv_signal(bytes);
}

inline void write_signal(const Signal& sig, const std::string& path, OutputFormat format, const Metadata& meta = {}) {
    detail::with_output(path, [&](std::ostream& out) {
        if (format == OutputFormat::Json) {
            nlohmann::ordered_json j;
            j["parameters"] = detail::metadata_json(meta);
            if (sig.sample_rate) {
                j["sample_rate"] = *sig.sample_rate;
            }
            auto& samples = j["samples"] = nlohmann::ordered_json::array();
            for (double v : sig.samples) {
                samples.push_back(round_to_9_digits(v));
            }
            out << j.dump(2) << '\n';
            return;
        }
        detail::write_metadata(out, meta);
        out << "sample\n";
        for (double v : sig.samples) {
            out << format_real(v) << '\n';
        }
    });
}

/// Writes 16-bit mono PCM; samples are clipped to [-1, 32767/32768].
inline void write_wav_pcm16(std::span<const double> samples, std::uint32_t rate, const std::string& path) {
    std::string b;
    const auto data_size = static_cast<std::uint32_t>(samples.size() * 2);
    b += "RIFF";
    detail::put32(b, 36 + data_size);
    b += "WAVEfmt ";
    detail::put32(b, 16);
    detail::put16(b, 1);
    detail::put16(b, 1);
    detail::put32(b, rate);
    detail::put32(b, rate * 2);
    detail::put16(b, 2);
    detail::put16(b, 16);
    b += "data";
    detail::put32(b, data_size);
    for (double v : samples) {
        const double scaled = std::clamp(std::round(v * 32768.0), -32768.0, 32767.0);
        detail::put16(b, static_cast<std::uint16_t>(static_cast<std::int16_t>(scaled)));
    }
    detail::with_output(path, [&](std::ostream& out) { out.write(b.data(), static_cast<std::streamsize>(b.size())); });
}

// --- spectra -----------------------------------------------------------------

/// Period -> strength pairs as serialized; shared by CSMP, Stage-1 and RFT output.
struct SpectrumData {
    Period max_q = 0;
    std::map<Period, double> strengths;
};

[[nodiscard]] inline SpectrumData to_data(const PeriodicSpectrum& s) { return {s.max_q, s.strengths}; }
[[nodiscard]] inline SpectrumData to_data(const RftSpectrum& s) { return {s.max_q, s.strengths}; }
[[nodiscard]] inline SpectrumData to_data(const PeriodEnergyTable& t) {
    SpectrumData d{t.max_q, {}};
    for (Period q = 1; q <= t.max_q; ++q) {
        d.strengths[q] = t.metrics[static_cast<std::size_t>(q)];
    }
    return d;
}

[[nodiscard]] inline nlohmann::ordered_json spectrum_json(const SpectrumData& s) {
    nlohmann::ordered_json j;
    j["max_q"] = s.max_q;
    auto& arr = j["strengths"] = nlohmann::ordered_json::array();
    for (const auto& [q, v] : s.strengths) {
        arr.push_back({{"q", q}, {"strength", round_to_9_digits(v)}});
    }
    return j;
}

inline void write_spectrum_csv(std::ostream& out, const SpectrumData& s, const Metadata& meta) {
    detail::write_metadata(out, meta);
    out << "q,strength\n";
    for (const auto& [q, v] : s.strengths) {
        out << q << ',' << format_real(v) << '\n';
    }
}

inline void write_spectrum(const SpectrumData& s, const std::string& path, OutputFormat format,
                           const Metadata& meta = {}) {
    detail::with_output(path, [&](std::ostream& out) {
        if (format == OutputFormat::Json) {
            nlohmann::ordered_json j;
            j["parameters"] = detail::metadata_json(meta);
            j.update(spectrum_json(s));
            out << j.dump(2) << '\n';
        } else {
            write_spectrum_csv(out, s, meta);
        }
    });
}

[[nodiscard]] inline SpectrumData read_spectrum(const std::string& path) {
    const std::string text = detail::read_file(path);
    SpectrumData s;
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        try {
            const auto j = nlohmann::json::parse(text);
            s.max_q = j.at("max_q").get<Period>();
            for (const auto& e : j.at("strengths")) {
                s.strengths[e.at("q").get<Period>()] = e.at("strength").get<double>();
            }
        } catch (const nlohmann::json::exception& e) {
            throw IoError("malformed spectrum JSON: " + std::string(e.what()));
        }
        return s;
    }
    for (const auto& [line_no, row] : detail::csv_rows(text, "q,strength")) {
        const auto cols = detail::split(row, ',');
        const auto q = cols.size() == 2 ? detail::parse_real(cols[0]) : std::nullopt;
        const auto v = cols.size() == 2 ? detail::parse_real(cols[1]) : std::nullopt;
        if (!q || !v) {
            throw IoError("malformed spectrum row at line " + std::to_string(line_no));
        }
        s.strengths[static_cast<Period>(*q)] = *v;
        s.max_q = std::max(s.max_q, static_cast<Period>(*q));
    }
    return s;
}

// --- time-period planes ---------------------------------------------------------

[[nodiscard]] inline nlohmann::ordered_json plane_json(const TimePeriodPlane& p) {
    nlohmann::ordered_json j;
    j["window_size"] = p.window_size;
    j["hop"] = p.hop;
    j["max_q"] = p.max_q;
    j["window_centers"] = p.window_centers;
    auto& cells = j["cells"] = nlohmann::ordered_json::array();
    for (std::size_t w = 0; w < p.window_count(); ++w) {
        for (Period q = 1; q <= p.max_q; ++q) {
            if (const double v = p.cell(w, q); v != 0.0) {
                cells.push_back({{"window", w}, {"q", q}, {"strength", round_to_9_digits(v)}});
            }
        }
    }
    return j;
}

/// Long format `window_center,q,strength`, zero cells omitted. The window
/// count, size and hop go in the metadata block so empty windows survive a
/// round trip.
inline void write_plane(const TimePeriodPlane& p, const std::string& path, OutputFormat format,
                        const Metadata& meta = {}) {
    detail::with_output(path, [&](std::ostream& out) {
        if (format == OutputFormat::Json) {
            nlohmann::ordered_json j;
            j["parameters"] = detail::metadata_json(meta);
            j.update(plane_json(p));
            out << j.dump(2) << '\n';
            return;
        }
        Metadata full = meta;
        full.emplace_back("window_size", std::to_string(p.window_size));
        full.emplace_back("hop", std::to_string(p.hop));
        full.emplace_back("max_q", std::to_string(p.max_q));
        full.emplace_back("windows", std::to_string(p.window_count()));
        detail::write_metadata(out, full);
        out << "window_center,q,strength\n";
        for (std::size_t w = 0; w < p.window_count(); ++w) {
            for (Period q = 1; q <= p.max_q; ++q) {
                if (const double v = p.cell(w, q); v != 0.0) {
                    out << format_real(p.window_centers[w]) << ',' << q << ',' << format_real(v) << '\n';
                }
            }
        }
    });
}

[[nodiscard]] inline TimePeriodPlane read_plane(const std::string& path) {
    const std::string text = detail::read_file(path);
    TimePeriodPlane p;
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        try {
            const auto j = nlohmann::json::parse(text);
            p.window_size = j.at("window_size").get<std::size_t>();
            p.hop = j.at("hop").get<std::size_t>();
            p.max_q = j.at("max_q").get<Period>();
            p.window_centers = j.at("window_centers").get<std::vector<double>>();
            p.cells.assign(p.window_count() * static_cast<std::size_t>(p.max_q), 0.0);
            for (const auto& c : j.at("cells")) {
                p.cell(c.at("window").get<std::size_t>(), c.at("q").get<Period>()) = c.at("strength").get<double>();
            }
        } catch (const nlohmann::json::exception& e) {
            throw IoError("malformed plane JSON: " + std::string(e.what()));
        }
        return p;
    }
    std::map<std::string, std::string> meta;
    std::istringstream lines(text);
    for (std::string line; std::getline(lines, line);) {
        const auto t = detail::trim(line);
        if (t.size() > 1 && t.front() == '#') {
            const auto body = detail::trim(t.substr(1));
            if (const auto eq = body.find('='); eq != std::string_view::npos) {
                meta[std::string(body.substr(0, eq))] = std::string(body.substr(eq + 1));
            }
        }
    }
    try {
        p.window_size = std::stoul(meta.at("window_size"));
        p.hop = std::stoul(meta.at("hop"));
        p.max_q = std::stoll(meta.at("max_q"));
        const std::size_t windows = std::stoul(meta.at("windows"));
        for (std::size_t w = 0; w < windows; ++w) {
            p.window_centers.push_back(static_cast<double>(w * p.hop) +
                                       static_cast<double>(p.window_size - 1) / 2.0);
        }
    } catch (const std::exception&) {
        throw IoError("plane CSV lacks window_size/hop/max_q/windows metadata");
    }
    p.cells.assign(p.window_count() * static_cast<std::size_t>(p.max_q), 0.0);
    for (const auto& [line_no, row] : detail::csv_rows(text, "window_center,q,strength")) {
        const auto cols = detail::split(row, ',');
        const auto c = cols.size() == 3 ? detail::parse_real(cols[0]) : std::nullopt;
        const auto q = cols.size() == 3 ? detail::parse_real(cols[1]) : std::nullopt;
        const auto v = cols.size() == 3 ? detail::parse_real(cols[2]) : std::nullopt;
        if (!c || !q || !v || *q < 1 || *q > static_cast<double>(p.max_q)) {
            throw IoError("malformed plane row at line " + std::to_string(line_no));
        }
        const double w = (*c - static_cast<double>(p.window_size - 1) / 2.0) / static_cast<double>(p.hop);
        const auto index = static_cast<std::size_t>(std::llround(w));
        if (w < -0.5 || index >= p.window_count()) {
            throw IoError("plane row at line " + std::to_string(line_no) + " references an unknown window");
        }
        p.cell(index, static_cast<Period>(*q)) = *v;
    }
    return p;
}

// --- traces and tracks ----------------------------------------------------------

inline void write_trace_csv(std::ostream& out, std::span<const double> rates, const Metadata& meta) {
    detail::write_metadata(out, meta);
    out << "iteration,error_rate\n";
    for (std::size_t l = 0; l < rates.size(); ++l) {
        out << l + 1 << ',' << format_real(rates[l]) << '\n';
    }
}

inline void write_track_csv(std::ostream& out, std::span<const TrackPoint> track, const Metadata& meta) {
    detail::write_metadata(out, meta);
    out << "window_center,period,empty\n";
    for (const TrackPoint& p : track) {
        out << format_real(p.window_center) << ',' << p.period << ',' << (p.empty ? 1 : 0) << '\n';
    }
}

[[nodiscard]] inline nlohmann::ordered_json track_json(std::span<const TrackPoint> track) {
    auto arr = nlohmann::ordered_json::array();
    for (const TrackPoint& p : track) {
        arr.push_back({{"window_center", round_to_9_digits(p.window_center)}, {"period", p.period}, {"empty", p.empty}});
    }
    return arr;
}

[[nodiscard]] inline nlohmann::ordered_json components_json(const Decomposition& d) {
    auto arr = nlohmann::ordered_json::array();
    for (const Component& c : d.components) {
        arr.push_back({{"q", c.atom.q},
                       {"i", c.atom.i},
                       {"k", c.atom.k},
                       {"dictionary_index", stacked_index(c.atom.q, c.atom.i)},
                       {"alpha_re", round_to_9_digits(c.alpha.real())},
                       {"alpha_im", round_to_9_digits(c.alpha.imag())},
                       {"energy", round_to_9_digits(c.energy)}});
    }
    return arr;
}

[[nodiscard]] inline std::vector<double> rounded(std::span<const double> values) {
    std::vector<double> out(values.size());
    std::transform(values.begin(), values.end(), out.begin(), round_to_9_digits);
    return out;
}

}  // namespace csmp
