#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "entemd/emd.hpp"
#include "entemd/errors.hpp"
#include "entemd/pentropy.hpp"
#include "entemd/time_series.hpp"

namespace entemd {

struct DetectorConfig {
    PeConfig pe_config;
    std::size_t mode_bins = 64;
    std::optional<std::size_t> merge_gap;          // defaults to window_length / 2
    std::optional<std::size_t> min_segment_length; // defaults to window_length
    bool use_gradient = true;

    std::size_t effective_merge_gap() const { return merge_gap.value_or(pe_config.window_length / 2); }
    std::size_t effective_min_segment_length() const {
        return min_segment_length.value_or(pe_config.window_length);
    }

    void validate() const {
        pe_config.validate();
        if (mode_bins < 2) throw ParameterError("mode_bins must be >= 2");
        if (effective_min_segment_length() < static_cast<std::size_t>(pe_config.order))
            throw ParameterError("min_segment_length must be >= order");
    }
};

// Half-open sample range [start, end) flagged as intermittent.
struct Segment {
    std::size_t start = 0;
    std::size_t end = 0;
    double peak_entropy = 0.0;

    std::size_t length() const noexcept { return end - start; }
    friend bool operator==(const Segment&, const Segment&) = default;
};

struct Detection {
    std::vector<Segment> segments;
    double threshold = 0.0;
    EntropyProfile profile;
    EntropyProfile envelope;
    std::vector<Segment> candidates; // above-threshold runs before merging and length filtering
};

/**
 * Spline through the local maxima of the profile, evaluated at every profile
 * position. Profiles with fewer than 2 maxima are returned unchanged.
 */
inline EntropyProfile pe_maxima_envelope(const EntropyProfile& profile) {
    if (profile.size() < 3) return profile;
    const Extrema e = find_extrema(profile.values);
    if (e.maxima.size() < 2) return profile;
    const TimeSeries curve(profile.values, 1.0);
    EntropyProfile out = profile;
    out.values = spline_envelope(curve, e.maxima, BoundaryPolicy::mirror).values();
    return out;
}

/**
 * Statistical mode of a continuous sample: center of the most populated of
 * `bins` equal-width bins over [min, max], ties going to the lower bin.
 * Equal values return that value.
 */
// Differences this small relative to the entropy scale are rounding, not structure.
inline double entropy_tolerance(double scale) { return 1e-12 * std::max(1.0, std::abs(scale)); }

inline double envelope_mode(std::span<const double> values, std::size_t bins) {
    if (values.empty()) throw StructuralError("envelope_mode of an empty envelope");
    if (bins < 2) throw ParameterError("mode_bins must be >= 2");
    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    if (hi - lo <= entropy_tolerance(hi)) return hi;
    const double width = (hi - lo) / static_cast<double>(bins);
    std::vector<std::size_t> counts(bins, 0);
    for (double v : values) {
        auto b = static_cast<std::size_t>((v - lo) / width);
        ++counts[std::min(b, bins - 1)];
    }
    const auto best = static_cast<std::size_t>(std::max_element(counts.begin(), counts.end()) - counts.begin());
    return lo + (static_cast<double>(best) + 0.5) * width;
}

inline double envelope_mode(const EntropyProfile& envelope, std::size_t bins) {
    return envelope_mode(envelope.values, bins);
}

/**
 * Finds the high-entropy portions of a series.
 *
 * Profile positions strictly above the mode of the profile's maxima envelope
 * form runs; each run becomes the union of its windows' sample support,
 * which widens the run of center anchors by half a window on each side.
 * Runs separated by fewer than merge_gap samples are merged and segments
 * shorter than min_segment_length dropped.
 */
inline Detection detect_segments(const TimeSeries& series, const DetectorConfig& config = {}) {
    config.validate();
    const PeConfig& pe = config.pe_config;
    const std::size_t extra = config.use_gradient ? 1 : 0;
    if (series.size() < pe.window_length + extra)
        throw StructuralError("series of length " + std::to_string(series.size()) +
                              " is too short for detection (need " + std::to_string(pe.window_length + extra) + ")");

    Detection det;
    det.profile = config.use_gradient ? entropy_profile(gradient_transform(series), pe) : entropy_profile(series, pe);
    det.envelope = pe_maxima_envelope(det.profile);
    det.threshold = envelope_mode(det.envelope, config.mode_bins);

    // A window over the gradient spans one more original sample than its length.
    const std::size_t support = pe.window_length + extra;
    const std::vector<double>& h = det.profile.values;
    const double cut = det.threshold + entropy_tolerance(det.threshold);
    for (std::size_t i = 0; i < h.size();) {
        if (!(h[i] > cut)) {
            ++i;
            continue;
        }
        std::size_t j = i;
        double peak = h[i];
        while (j + 1 < h.size() && h[j + 1] > cut) peak = std::max(peak, h[++j]);
        const std::size_t start = det.profile.window_start(i);
        const std::size_t end = std::min(series.size(), det.profile.window_start(j) + support);
        det.candidates.push_back({start, end, peak});
        i = j + 1;
    }

    const std::size_t gap = config.effective_merge_gap();
    std::vector<Segment> merged;
    for (const Segment& s : det.candidates) {
        if (!merged.empty() && s.start < merged.back().end + gap) {
            merged.back().end = std::max(merged.back().end, s.end);
            merged.back().peak_entropy = std::max(merged.back().peak_entropy, s.peak_entropy);
        } else {
            merged.push_back(s);
        }
    }
    const std::size_t min_len = config.effective_min_segment_length();
    for (const Segment& s : merged)
        if (s.length() >= min_len) det.segments.push_back(s);
    return det;
}

// EMD of each segment's slice; slices too short to sift give an empty decomposition.
inline std::vector<Decomposition> local_decompose(const TimeSeries& series, std::span<const Segment> segments,
                                                  const SiftConfig& sift = {}) {
    std::vector<Decomposition> out;
    out.reserve(segments.size());
    for (const Segment& s : segments) {
        TimeSeries slice = series.slice(s.start, s.end);
        if (slice.size() < 4) {
            out.push_back(Decomposition{{}, std::move(slice), {}});
            continue;
        }
        out.push_back(decompose(slice, sift));
    }
    return out;
}

/**
 * Mean sliding-window entropy of a slice. Slices shorter than one window use a
 * single window spanning the slice; slices shorter than the pattern order
 * carry no patterns and score 0.
 */
inline double mean_slice_entropy(std::span<const double> slice, const PeConfig& pe) {
    if (slice.size() < static_cast<std::size_t>(pe.order)) return 0.0;
    if (slice.size() < pe.window_length) return permutation_entropy(slice, pe);
    const EntropyProfile p = entropy_profile(slice, pe);
    double sum = 0.0;
    for (double v : p.values) sum += v;
    return sum / static_cast<double>(p.size());
}

inline std::vector<double> imf_entropies(const Decomposition& local, const PeConfig& pe) {
    std::vector<double> out;
    out.reserve(local.imfs.size());
    for (const TimeSeries& imf : local.imfs) out.push_back(mean_slice_entropy(imf.samples(), pe));
    return out;
}

/**
 * Which leading IMFs carry the intermittent content.
 *
 * Splits the IMF entropy sequence at its largest consecutive drop and
 * returns the indices before the split. At least IMF 0 is removed when two or
 * more IMFs exist; the last IMF is never removed. A single IMF gives no
 * removal.
 */
inline std::vector<std::size_t> select_removal(std::span<const double> imf_pe) {
    if (imf_pe.size() < 2) return {};
    std::size_t split = 0;
    double largest = imf_pe[0] - imf_pe[1];
    for (std::size_t i = 1; i + 1 < imf_pe.size(); ++i) {
        const double drop = imf_pe[i] - imf_pe[i + 1];
        if (drop > largest) {
            largest = drop;
            split = i;
        }
    }
    std::vector<std::size_t> out(split + 1);
    for (std::size_t i = 0; i <= split; ++i) out[i] = i;
    return out;
}

/**
 * Removal for a local decomposition. The residue's entropy is appended as the
 * final, never-removable entry, so a slice that splits into one IMF and a
 * slow residue still separates the IMF from the residue.
 */
inline std::vector<std::size_t> select_removal(const Decomposition& local, const PeConfig& pe) {
    if (local.imfs.empty()) return {};
    std::vector<double> sequence = imf_entropies(local, pe);
    sequence.push_back(mean_slice_entropy(local.residue.samples(), pe));
    return select_removal(sequence);
}

struct RepairReport {
    DetectorConfig detector;
    SiftConfig sift;
    std::vector<Segment> segments;
    double threshold = 0.0;
    EntropyProfile profile;
    std::vector<double> segment_entropies;            // mean entropy of each original slice
    std::vector<Decomposition> local_decompositions;
    std::vector<std::vector<double>> imf_entropies;   // per segment, per local IMF
    std::vector<double> residue_entropies;            // per segment, local residue
    std::vector<std::vector<std::size_t>> removed_imf_indices;
    TimeSeries intermittent_component;
    TimeSeries repaired_series;
    Decomposition final_repaired_decomposition;
    std::optional<Decomposition> final_intermittent_decomposition;
};

// Linear fade-in/fade-out weight for position j of a segment of length len.
inline double edge_weight(std::size_t j, std::size_t len, std::size_t ramp) {
    if (ramp == 0) return 1.0;
    const double denom = static_cast<double>(ramp + 1);
    const double rise = static_cast<double>(j + 1) / denom;
    const double fall = static_cast<double>(len - j) / denom;
    return std::min({1.0, rise, fall});
}

/**
 * Full entropic EMD pipeline: detect intermittent segments, decompose each
 * locally, move the high-entropy leading IMFs of each segment into the
 * intermittent component, and decompose both tracks.
 *
 * repaired_series is computed as series - intermittent_component, so the two
 * tracks always sum back to the input.
 */
inline RepairReport repair(const TimeSeries& series, const DetectorConfig& detector = {},
                           const SiftConfig& sift = {}) {
    detector.validate();
    sift.validate();
    Detection det = detect_segments(series, detector);
    const PeConfig& pe = detector.pe_config;

    RepairReport report{detector,
                        sift,
                        std::move(det.segments),
                        det.threshold,
                        std::move(det.profile),
                        {},
                        {},
                        {},
                        {},
                        {},
                        TimeSeries::zeros(series.size(), series.sampling_period()),
                        series,
                        Decomposition{{}, series, {}},
                        std::nullopt};

    report.local_decompositions = local_decompose(series, report.segments, sift);

    std::vector<double> intermittent(series.size(), 0.0);
    for (std::size_t k = 0; k < report.segments.size(); ++k) {
        const Segment& seg = report.segments[k];
        const Decomposition& local = report.local_decompositions[k];
        report.segment_entropies.push_back(mean_slice_entropy(series.samples().subspan(seg.start, seg.length()), pe));
        report.imf_entropies.push_back(imf_entropies(local, pe));
        report.residue_entropies.push_back(mean_slice_entropy(local.residue.samples(), pe));
        report.removed_imf_indices.push_back(select_removal(local, pe));

        const std::size_t len = seg.length();
        const std::size_t ramp = std::min(pe.window_length / 4, len / 4);
        for (std::size_t j = 0; j < len; ++j) {
            double removed = 0.0;
            for (std::size_t idx : report.removed_imf_indices.back()) removed += local.imfs[idx][j];
            intermittent[seg.start + j] = edge_weight(j, len, ramp) * removed;
        }
    }

    report.intermittent_component = TimeSeries(std::move(intermittent), series.sampling_period());
    report.repaired_series = series - report.intermittent_component;
    report.final_repaired_decomposition = decompose(report.repaired_series, sift);
    if (!is_residue(report.intermittent_component))
        report.final_intermittent_decomposition = decompose(report.intermittent_component, sift);
    return report;
}

} // namespace entemd
