#pragma once

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "entemd/entemd.hpp"

namespace entemd::cli {

enum ExitCode : int { ok = 0, usage_error = 1, data_error = 2 };

namespace detail {

struct Options {
    std::string input;
    std::optional<std::string> output;
    std::string format = "csv";
    double sampling_period = 1.0;
    std::uint64_t seed = 0;

    SiftConfig sift;
    std::string boundary = "mirror";

    PeConfig pe;
    bool gradient = false;

    DetectorConfig detector;
    std::optional<std::size_t> merge_gap;
    std::optional<std::size_t> min_segment;

    IntermittencyScenario scenario;
};

inline void add_output_flags(CLI::App& cmd, Options& o) {
    cmd.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    cmd.add_option("--output,-o", o.output, "Output path");
}

inline void add_input(CLI::App& cmd, Options& o) {
    cmd.add_option("input", o.input, "Input series (.json for JSON, otherwise CSV)")->required();
    cmd.add_option("--sampling-period,--ts", o.sampling_period, "Sampling period of CSV input, seconds")
        ->capture_default_str();
}

inline void add_sift_flags(CLI::App& cmd, Options& o) {
    cmd.add_option("--sd-threshold", o.sift.sd_threshold, "Sifting SD stopping tolerance")->capture_default_str();
    cmd.add_option("--max-sift", o.sift.max_sift_iterations, "Maximum sifting iterations per IMF")
        ->capture_default_str();
    cmd.add_option("--max-imfs", o.sift.max_imfs, "Maximum number of IMFs")->capture_default_str();
    cmd.add_option("--boundary", o.boundary, "Envelope boundary policy")
        ->check(CLI::IsMember({"mirror", "clamp"}))
        ->capture_default_str();
}

inline void add_pe_flags(CLI::App& cmd, Options& o) {
    cmd.add_option("--tau", o.pe.window_length, "Entropy window length, samples")->capture_default_str();
    cmd.add_option("--m", o.pe.order, "Ordinal pattern order")->capture_default_str();
    cmd.add_option("--step", o.pe.step, "Window step, samples")->capture_default_str();
    cmd.add_flag("--normalize", o.pe.normalize, "Divide entropy by ln(m!)");
}

inline void add_detector_flags(CLI::App& cmd, Options& o) {
    cmd.add_option("--mode-bins", o.detector.mode_bins, "Histogram bins for the envelope mode")
        ->capture_default_str();
    cmd.add_option("--merge-gap", o.merge_gap, "Merge segments closer than this many samples (default tau/2)");
    cmd.add_option("--min-segment", o.min_segment, "Drop segments shorter than this (default tau)");
}

inline SeriesFormat output_format(const Options& o) { return parse_format(o.format); }

inline std::string extension(SeriesFormat f) { return f == SeriesFormat::csv ? ".csv" : ".json"; }

inline void emit(const std::string& text, const std::optional<std::string>& path, std::ostream& out) {
    if (path) entemd::detail::write_file(*path, text);
    else out << text;
}

inline TimeSeries read_input(const Options& o) {
    return load_series(o.input, format_from_extension(o.input), o.sampling_period);
}

inline nlohmann::json scenario_json(const IntermittencyScenario& s, std::uint64_t seed) {
    return {{"carrier_frequency", s.carrier_frequency}, {"carrier_amplitude", s.carrier_amplitude},
            {"burst_frequency", s.burst_frequency},     {"burst_amplitude", s.burst_amplitude},
            {"burst_onset", s.burst_onset},             {"burst_offset", s.burst_offset},
            {"noise_stddev", s.noise_stddev},           {"length", s.length},
            {"sampling_period", s.sampling_period},     {"seed", seed}};
}

inline std::string series_text(const TimeSeries& s, SeriesFormat f, const nlohmann::json& provenance = {}) {
    if (f == SeriesFormat::csv) return to_csv(s);
    nlohmann::json j = to_json(s);
    if (!provenance.is_null()) j["provenance"] = provenance;
    return j.dump() + "\n";
}

inline std::string decomposition_text(const Decomposition& d, SeriesFormat f, const SiftConfig& sift) {
    if (f == SeriesFormat::csv) return to_csv(d);
    nlohmann::json j = to_json(d);
    j["sift_config"] = to_json(sift);
    return j.dump() + "\n";
}

inline int run_synth(const Options& o, std::ostream&, std::ostream& err) {
    const SeriesFormat f = output_format(o);
    const SyntheticSignal sig = make_intermittent_signal(o.scenario, o.seed);
    const std::filesystem::path out(*o.output);
    std::filesystem::path truth = out;
    truth.replace_filename(out.stem().string() + "_truth" + out.extension().string());
    const nlohmann::json prov = scenario_json(o.scenario, o.seed);
    entemd::detail::write_file(out, series_text(sig.signal, f, prov));
    entemd::detail::write_file(truth, series_text(sig.ground_truth, f, prov));
    err << "wrote " << out.string() << " and " << truth.string() << "\n";
    return ok;
}

inline int run_decompose(const Options& o, std::ostream& out, std::ostream& err) {
    const TimeSeries x = read_input(o);
    const Decomposition d = decompose(x, o.sift);
    err << d.imfs.size() << " IMFs, orthogonality index " << orthogonality_index(d) << "\n";
    emit(decomposition_text(d, output_format(o), o.sift), o.output, out);
    return ok;
}

inline int run_entropy(const Options& o, std::ostream& out, std::ostream& err) {
    const TimeSeries x = read_input(o);
    const EntropyProfile p = o.gradient ? entropy_profile(gradient_transform(x), o.pe) : entropy_profile(x, o.pe);
    for (const std::string& w : p.warnings) err << "warning: " << w << "\n";
    if (output_format(o) == SeriesFormat::csv) {
        emit(to_csv(p), o.output, out);
    } else {
        nlohmann::json j = to_json(p);
        j["gradient"] = o.gradient;
        emit(j.dump() + "\n", o.output, out);
    }
    return ok;
}

inline int run_repair(const Options& o, std::ostream&, std::ostream& err) {
    const SeriesFormat f = output_format(o);
    const TimeSeries x = read_input(o);
    const RepairReport r = repair(x, o.detector, o.sift);
    for (const std::string& w : r.profile.warnings) err << "warning: " << w << "\n";

    const std::filesystem::path dir(*o.output);
    std::filesystem::create_directories(dir);
    const std::string ext = extension(f);
    entemd::detail::write_file(dir / "report.json", to_json(r).dump() + "\n");
    entemd::detail::write_file(dir / "segments.csv", segments_to_csv(r.segments));
    entemd::detail::write_file(dir / ("repaired" + ext), series_text(r.repaired_series, f));
    entemd::detail::write_file(dir / ("intermittent" + ext), series_text(r.intermittent_component, f));
    entemd::detail::write_file(dir / ("repaired_decomposition" + ext),
                               decomposition_text(r.final_repaired_decomposition, f, o.sift));
    if (r.final_intermittent_decomposition)
        entemd::detail::write_file(dir / ("intermittent_decomposition" + ext),
                                   decomposition_text(*r.final_intermittent_decomposition, f, o.sift));
    if (f == SeriesFormat::csv) entemd::detail::write_file(dir / "profile.csv", to_csv(r.profile));
    else entemd::detail::write_file(dir / "profile.json", to_json(r.profile).dump() + "\n");

    err << r.segments.size() << " segment(s), threshold " << r.threshold << "\n";
    return ok;
}

} // namespace detail

/**
 * Entry point shared by the entemd binary and the tests.
 * Returns 0 on success, 1 on usage errors, 2 on data or structural errors.
 */
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    detail::Options o;
    CLI::App app{"Entropic empirical mode decomposition toolkit", "entemd"};
    app.require_subcommand(1);

    auto* synth = app.add_subcommand("synth", "Generate an intermittent test signal and its ground truth");
    detail::add_output_flags(*synth, o);
    synth->get_option("--output")->required();
    auto& sc = o.scenario;
    synth->add_option("--carrier-freq", sc.carrier_frequency, "Carrier frequency, Hz")->capture_default_str();
    synth->add_option("--carrier-amp", sc.carrier_amplitude, "Carrier amplitude")->capture_default_str();
    synth->add_option("--burst-freq", sc.burst_frequency, "Burst frequency, Hz")->capture_default_str();
    synth->add_option("--burst-amp", sc.burst_amplitude, "Burst amplitude")->capture_default_str();
    synth->add_option("--onset", sc.burst_onset, "Burst onset sample (inclusive)")->capture_default_str();
    synth->add_option("--offset", sc.burst_offset, "Burst offset sample (exclusive)")->capture_default_str();
    synth->add_option("--noise", sc.noise_stddev, "Gaussian noise standard deviation")->capture_default_str();
    synth->add_option("--length", sc.length, "Number of samples")->capture_default_str();
    synth->add_option("--sampling-period,--ts", sc.sampling_period, "Sampling period, seconds")
        ->capture_default_str();
    synth->add_option("--seed", o.seed, "Noise seed")->capture_default_str();

    auto* dec = app.add_subcommand("decompose", "Empirical mode decomposition of a series");
    detail::add_input(*dec, o);
    detail::add_output_flags(*dec, o);
    detail::add_sift_flags(*dec, o);

    auto* ent = app.add_subcommand("entropy", "Sliding-window permutation entropy profile");
    detail::add_input(*ent, o);
    detail::add_output_flags(*ent, o);
    detail::add_pe_flags(*ent, o);
    ent->add_flag("--gradient,!--no-gradient", o.gradient, "Profile the sign of the first difference");

    auto* rep = app.add_subcommand("repair", "Detect intermittent segments and separate them");
    detail::add_input(*rep, o);
    detail::add_output_flags(*rep, o);
    rep->get_option("--output")->required()->description("Output directory");
    detail::add_sift_flags(*rep, o);
    detail::add_pe_flags(*rep, o);
    detail::add_detector_flags(*rep, o);
    rep->add_flag("--gradient,!--no-gradient", o.detector.use_gradient,
                  "Detect on the sign of the first difference (default on)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? ok : usage_error;
    }

    try {
        o.sift.boundary_policy = parse_boundary_policy(o.boundary);
        o.sift.validate();
        o.pe.validate();
        o.detector.pe_config = o.pe;
        o.detector.merge_gap = o.merge_gap;
        o.detector.min_segment_length = o.min_segment;
        o.detector.validate();
        if (!(o.sampling_period > 0.0)) throw ParameterError("--sampling-period must be positive");
        if (*synth) o.scenario.validate();
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << "\n";
        return usage_error;
    }

    try {
        if (*synth) return detail::run_synth(o, out, err);
        if (*dec) return detail::run_decompose(o, out, err);
        if (*ent) return detail::run_entropy(o, out, err);
        return detail::run_repair(o, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return data_error;
    }
}

} // namespace entemd::cli
