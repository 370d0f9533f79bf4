#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "entemd/emd.hpp"
#include "entemd/mixfix.hpp"
#include "entemd/pentropy.hpp"
#include "entemd/series_io.hpp"

namespace entemd {

// JSON and CSV renderings of decompositions, entropy profiles and repair
// reports. Every output echoes the configuration that produced it.

inline nlohmann::json to_json(const SiftConfig& c) {
    return {{"sd_threshold", c.sd_threshold},
            {"max_sift_iterations", c.max_sift_iterations},
            {"max_imfs", c.max_imfs},
            {"boundary_policy", boundary_policy_name(c.boundary_policy)}};
}

inline nlohmann::json to_json(const PeConfig& c) {
    return {{"window_length", c.window_length},
            {"order", c.order},
            {"step", c.step},
            {"tie_rule", tie_rule_name(c.tie_rule)},
            {"normalize", c.normalize},
            {"statistically_valid", c.statistically_valid()}};
}

inline nlohmann::json to_json(const DetectorConfig& c) {
    return {{"pe_config", to_json(c.pe_config)},
            {"mode_bins", c.mode_bins},
            {"merge_gap", c.effective_merge_gap()},
            {"min_segment_length", c.effective_min_segment_length()},
            {"use_gradient", c.use_gradient}};
}

inline nlohmann::json to_json(const Decomposition& d) {
    nlohmann::json imfs = nlohmann::json::array();
    for (const TimeSeries& imf : d.imfs) imfs.push_back(detail::to_json_array(imf.samples()));
    return {{"sampling_period", d.sampling_period()},
            {"imfs", std::move(imfs)},
            {"residue", detail::to_json_array(d.residue.samples())},
            {"sift_counts", d.sift_counts}};
}

// Header imf1,...,imfN,residue; one row per sample.
inline std::string to_csv(const Decomposition& d) {
    std::string out;
    for (std::size_t k = 0; k < d.imfs.size(); ++k) out += "imf" + std::to_string(k + 1) + ",";
    out += "residue\n";
    for (std::size_t i = 0; i < d.size(); ++i) {
        for (const TimeSeries& imf : d.imfs) {
            out += detail::format_double(imf[i]);
            out += ',';
        }
        out += detail::format_double(d.residue[i]);
        out += '\n';
    }
    return out;
}

inline Decomposition decomposition_from_json(const nlohmann::json& j) {
    const double ts = j.at("sampling_period").get<double>();
    std::vector<TimeSeries> imfs;
    for (const auto& imf : j.at("imfs")) imfs.emplace_back(imf.get<std::vector<double>>(), ts);
    return Decomposition{std::move(imfs), TimeSeries(j.at("residue").get<std::vector<double>>(), ts),
                         j.at("sift_counts").get<std::vector<int>>()};
}

inline nlohmann::json to_json(const EntropyProfile& p) {
    std::vector<std::size_t> index(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) index[i] = p.anchor(i);
    return {{"config", to_json(p.config)},
            {"alignment", "window_center"},
            {"first_index", p.first_index},
            {"source_length", p.source_length},
            {"index", std::move(index)},
            {"entropy", detail::to_json_array(p.values)},
            {"warnings", p.warnings}};
}

// Columns index,entropy; index is the window-center sample.
inline std::string to_csv(const EntropyProfile& p) {
    std::string out = "index,entropy\n";
    for (std::size_t i = 0; i < p.size(); ++i) {
        out += std::to_string(p.anchor(i));
        out += ',';
        out += detail::format_double(p.values[i]);
        out += '\n';
    }
    return out;
}

inline nlohmann::json to_json(const Segment& s) {
    return {{"start", s.start}, {"end", s.end}, {"peak_entropy", s.peak_entropy}};
}

inline std::string segments_to_csv(const std::vector<Segment>& segments) {
    std::string out = "start,end,peak_entropy\n";
    for (const Segment& s : segments)
        out += std::to_string(s.start) + "," + std::to_string(s.end) + "," + detail::format_double(s.peak_entropy) + "\n";
    return out;
}

inline nlohmann::json to_json(const RepairReport& r) {
    nlohmann::json segments = nlohmann::json::array();
    for (const Segment& s : r.segments) segments.push_back(to_json(s));
    nlohmann::json locals = nlohmann::json::array();
    for (const Decomposition& d : r.local_decompositions) locals.push_back(to_json(d));
    return {{"detector", to_json(r.detector)},
            {"sift", to_json(r.sift)},
            {"threshold", r.threshold},
            {"segments", std::move(segments)},
            {"segment_entropies", r.segment_entropies},
            {"imf_entropies", r.imf_entropies},
            {"residue_entropies", r.residue_entropies},
            {"removed_imf_indices", r.removed_imf_indices},
            {"local_decompositions", std::move(locals)},
            {"profile", to_json(r.profile)},
            {"intermittent_component", to_json(r.intermittent_component)},
            {"repaired_series", to_json(r.repaired_series)},
            {"final_repaired_decomposition", to_json(r.final_repaired_decomposition)},
            {"final_intermittent_decomposition",
             r.final_intermittent_decomposition ? to_json(*r.final_intermittent_decomposition) : nlohmann::json()}};
}

} // namespace entemd
