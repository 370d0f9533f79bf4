#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "entemd/errors.hpp"
#include "entemd/time_series.hpp"

namespace entemd {

enum class SeriesFormat { csv, json };

inline SeriesFormat parse_format(std::string_view name) {
    if (name == "csv") return SeriesFormat::csv;
    if (name == "json") return SeriesFormat::json;
    throw ParameterError("unknown format '" + std::string(name) + "' (expected csv or json)");
}

inline const char* format_name(SeriesFormat f) { return f == SeriesFormat::csv ? "csv" : "json"; }

// .json selects JSON, anything else CSV.
inline SeriesFormat format_from_extension(const std::filesystem::path& path) {
    return path.extension() == ".json" ? SeriesFormat::json : SeriesFormat::csv;
}

namespace detail {

// Shortest representation that parses back to the same double.
inline std::string format_double(double v) {
    std::array<char, 32> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc{}) throw Error("failed to format number");
    return std::string(buf.data(), end);
}

inline std::string_view trim(std::string_view s) {
    const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

inline bool parse_double(std::string_view text, double& out) {
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc{} && ptr == text.data() + text.size() && !text.empty();
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << contents;
    out.flush();
    if (!out) throw IoError("write to '" + path.string() + "' failed");
}

inline nlohmann::json to_json_array(std::span<const double> values) {
    return nlohmann::json(std::vector<double>(values.begin(), values.end()));
}

} // namespace detail

// One sample per line, optional leading `value` header. Blank lines are skipped.
inline TimeSeries parse_csv_series(std::string_view text, double sampling_period) {
    std::vector<double> samples;
    std::size_t line_no = 0;
    bool seen_content = false;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        line = detail::trim(line);
        if (line.empty()) continue;
        if (!seen_content) {
            seen_content = true;
            if (line == "value") continue;
        }
        double v = 0.0;
        if (!detail::parse_double(line, v))
            throw ParseError("cannot parse '" + std::string(line) + "' as a number", line_no);
        if (!std::isfinite(v))
            throw ParseError("non-finite value '" + std::string(line) + "' in row " + std::to_string(line_no),
                             line_no);
        samples.push_back(v);
    }
    if (samples.empty()) throw ParseError("no samples found", 0);
    return TimeSeries(std::move(samples), sampling_period);
}

// {"sampling_period": <number>, "samples": [<numbers>]}
inline TimeSeries parse_json_series(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.what(), 0);
    }
    if (!doc.is_object() || !doc.contains("sampling_period") || !doc.contains("samples"))
        throw ParseError("expected object with 'sampling_period' and 'samples'", 0);
    const auto& ts = doc.at("sampling_period");
    const auto& arr = doc.at("samples");
    if (!ts.is_number()) throw ParseError("'sampling_period' must be a number", 0);
    if (!arr.is_array()) throw ParseError("'samples' must be an array", 0);
    if (arr.empty()) throw ParseError("no samples found", 0);
    std::vector<double> samples;
    samples.reserve(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) {
        if (!arr[i].is_number())
            throw ParseError("samples[" + std::to_string(i) + "] is not a finite number", 0);
        samples.push_back(arr[i].get<double>());
    }
    const double period = ts.get<double>();
    if (!(period > 0.0)) throw ParseError("'sampling_period' must be positive", 0);
    return TimeSeries(std::move(samples), period);
}

inline std::string to_csv(const TimeSeries& series) {
    std::string out = "value\n";
    for (double v : series.samples()) {
        out += detail::format_double(v);
        out += '\n';
    }
    return out;
}

inline nlohmann::json to_json(const TimeSeries& series) {
    return {{"sampling_period", series.sampling_period()}, {"samples", detail::to_json_array(series.samples())}};
}

// csv_sampling_period is used for CSV only; JSON carries its own period.
inline TimeSeries load_series(const std::filesystem::path& path, SeriesFormat format,
                              double csv_sampling_period = 1.0) {
    const std::string text = detail::read_file(path);
    try {
        return format == SeriesFormat::csv ? parse_csv_series(text, csv_sampling_period)
                                           : parse_json_series(text);
    } catch (const ParseError& e) {
        throw e.with_context(path.string());
    }
}

inline void write_series(const TimeSeries& series, const std::filesystem::path& path, SeriesFormat format) {
    detail::write_file(path, format == SeriesFormat::csv ? to_csv(series) : to_json(series).dump() + "\n");
}

} // namespace entemd
