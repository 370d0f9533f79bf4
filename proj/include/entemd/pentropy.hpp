#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "entemd/errors.hpp"
#include "entemd/time_series.hpp"

namespace entemd {

// Equal values are ranked by position: the earlier sample ranks lower.
enum class TieRule { index_order };

inline const char* tie_rule_name(TieRule) { return "index_order"; }

inline constexpr int max_pattern_order = 10;

struct PeConfig {
    std::size_t window_length = 120; // samples per entropy window
    int order = 3;                   // ordinal pattern length
    std::size_t step = 1;            // hop between consecutive windows
    TieRule tie_rule = TieRule::index_order;
    bool normalize = false;          // divide by ln(order!)

    void validate() const {
        if (order < 2) throw ParameterError("order must be >= 2");
        if (order > max_pattern_order)
            throw ParameterError("order must be <= " + std::to_string(max_pattern_order));
        if (window_length < static_cast<std::size_t>(order))
            throw ParameterError("window_length must be >= order");
        if (step < 1) throw ParameterError("step must be >= 1");
    }

    // Patterns per window.
    std::size_t patterns_per_window() const { return window_length - static_cast<std::size_t>(order) + 1; }

    // At least 101 patterns per window are needed for the pattern
    // probabilities to reflect local structure.
    bool statistically_valid() const { return patterns_per_window() > 100; }
};

inline std::size_t factorial(int m) {
    std::size_t f = 1;
    for (int k = 2; k <= m; ++k) f *= static_cast<std::size_t>(k);
    return f;
}

// Rank order of a short window of values.
struct OrdinalPattern {
    std::vector<int> ranks;

    // Lexicographic index of the permutation among all order! permutations;
    // the ascending pattern is 0.
    std::size_t index() const {
        const int m = static_cast<int>(ranks.size());
        std::size_t idx = 0;
        for (int k = 0; k < m; ++k) {
            std::size_t smaller_after = 0;
            for (int j = k + 1; j < m; ++j) smaller_after += ranks[j] < ranks[k];
            idx = idx * static_cast<std::size_t>(m - k) + smaller_after;
        }
        return idx;
    }

    friend bool operator==(const OrdinalPattern&, const OrdinalPattern&) = default;
};

namespace detail {

inline std::size_t pattern_index(std::span<const double> w) {
    const std::size_t m = w.size();
    std::size_t idx = 0;
    // Lehmer digits computed directly from values under the index-order tie rule:
    // rank[j] < rank[k] for j > k iff w[j] < w[k].
    for (std::size_t k = 0; k < m; ++k) {
        std::size_t smaller_after = 0;
        for (std::size_t j = k + 1; j < m; ++j) smaller_after += w[j] < w[k];
        idx = idx * (m - k) + smaller_after;
    }
    return idx;
}

inline double entropy_from_counts(std::span<const std::size_t> counts, std::size_t total, int order, bool normalize) {
    double h = 0.0;
    const double n = static_cast<double>(total);
    for (std::size_t c : counts) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / n;
        h -= p * std::log(p);
    }
    if (normalize) h /= std::log(static_cast<double>(factorial(order)));
    return h;
}

inline void require_order(int order) {
    if (order < 2 || order > max_pattern_order)
        throw ParameterError("order must be in [2, " + std::to_string(max_pattern_order) + "]");
}

} // namespace detail

inline OrdinalPattern ordinal_pattern(std::span<const double> window, int order, TieRule = TieRule::index_order) {
    detail::require_order(order);
    if (window.size() != static_cast<std::size_t>(order))
        throw StructuralError("ordinal_pattern: window has " + std::to_string(window.size()) +
                              " values, expected " + std::to_string(order));
    OrdinalPattern p;
    p.ranks.resize(window.size());
    for (std::size_t k = 0; k < window.size(); ++k) {
        int rank = 0;
        for (std::size_t j = 0; j < window.size(); ++j)
            rank += window[j] < window[k] || (window[j] == window[k] && j < k);
        p.ranks[k] = rank;
    }
    return p;
}

// Occurrence count of each pattern (indexed by OrdinalPattern::index) over
// the segment.size() - order + 1 consecutive windows.
inline std::vector<std::size_t> pattern_counts(std::span<const double> segment, int order,
                                               TieRule = TieRule::index_order) {
    detail::require_order(order);
    const auto m = static_cast<std::size_t>(order);
    if (segment.size() < m)
        throw StructuralError("segment of length " + std::to_string(segment.size()) + " is shorter than order " +
                              std::to_string(order));
    std::vector<std::size_t> counts(factorial(order), 0);
    for (std::size_t s = 0; s + m <= segment.size(); ++s) ++counts[detail::pattern_index(segment.subspan(s, m))];
    return counts;
}

inline std::vector<double> pattern_distribution(std::span<const double> segment, int order,
                                                TieRule rule = TieRule::index_order) {
    const std::vector<std::size_t> counts = pattern_counts(segment, order, rule);
    const double total = static_cast<double>(segment.size() - static_cast<std::size_t>(order) + 1);
    std::vector<double> p(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i) p[i] = static_cast<double>(counts[i]) / total;
    return p;
}

// Shannon entropy (nats) of the ordinal pattern distribution of the segment.
inline double permutation_entropy(std::span<const double> segment, const PeConfig& config = {}) {
    const std::vector<std::size_t> counts = pattern_counts(segment, config.order, config.tie_rule);
    return detail::entropy_from_counts(counts, segment.size() - static_cast<std::size_t>(config.order) + 1,
                                       config.order, config.normalize);
}

// Entropy of an explicit probability vector; zero entries contribute nothing.
inline double shannon_entropy(std::span<const double> probabilities) {
    double h = 0.0;
    for (double p : probabilities)
        if (p > 0.0) h -= p * std::log(p);
    return h;
}

enum class ProfileAlignment { window_center };

/**
 * Sliding-window permutation entropy.
 *
 * values[i] is the entropy of the window starting at i * step; it is anchored
 * to sample first_index + i * step, the window's center.
 */
struct EntropyProfile {
    std::vector<double> values;
    PeConfig config;
    ProfileAlignment alignment = ProfileAlignment::window_center;
    std::size_t first_index = 0;
    std::size_t source_length = 0;
    std::vector<std::string> warnings;

    std::size_t size() const noexcept { return values.size(); }
    std::size_t anchor(std::size_t i) const noexcept { return first_index + i * config.step; }
    std::size_t window_start(std::size_t i) const noexcept { return i * config.step; }
};

inline EntropyProfile entropy_profile(std::span<const double> series, const PeConfig& config = {}) {
    config.validate();
    const std::size_t tau = config.window_length;
    if (series.size() < tau)
        throw StructuralError("series of length " + std::to_string(series.size()) +
                              " is shorter than one entropy window (" + std::to_string(tau) + ")");
    const auto m = static_cast<std::size_t>(config.order);

    // Pattern index of every length-m run, shared by all windows.
    std::vector<std::size_t> patterns(series.size() - m + 1);
    for (std::size_t s = 0; s < patterns.size(); ++s) patterns[s] = detail::pattern_index(series.subspan(s, m));

    EntropyProfile profile;
    profile.config = config;
    profile.first_index = tau / 2;
    profile.source_length = series.size();
    if (!config.statistically_valid())
        profile.warnings.push_back("window_length - order + 1 = " + std::to_string(config.patterns_per_window()) +
                                   " <= 100; pattern probabilities may not reflect local structure");

    const std::size_t windows = (series.size() - tau) / config.step + 1;
    const std::size_t per_window = config.patterns_per_window();
    profile.values.resize(windows);
    std::vector<std::size_t> counts(factorial(config.order), 0);
    std::size_t start = 0;
    for (std::size_t s = start; s < per_window; ++s) ++counts[patterns[s]];
    for (std::size_t w = 0; w < windows; ++w) {
        const std::size_t next = w * config.step;
        if (next >= start + per_window) {
            std::fill(counts.begin(), counts.end(), 0);
            for (std::size_t s = next; s < next + per_window; ++s) ++counts[patterns[s]];
        } else {
            for (std::size_t s = start; s < next; ++s) --counts[patterns[s]];
            for (std::size_t s = start + per_window; s < next + per_window; ++s) ++counts[patterns[s]];
        }
        start = next;
        profile.values[w] = detail::entropy_from_counts(counts, per_window, config.order, config.normalize);
    }
    return profile;
}

inline EntropyProfile entropy_profile(const TimeSeries& series, const PeConfig& config = {}) {
    return entropy_profile(series.samples(), config);
}

// sign(y[k+1] - y[k]) for k in [0, N-1); flat steps map to 0.
inline TimeSeries gradient_transform(const TimeSeries& series) {
    if (series.size() < 2) throw StructuralError("gradient_transform needs at least 2 samples");
    std::vector<double> out(series.size() - 1);
    for (std::size_t k = 0; k + 1 < series.size(); ++k) {
        const double d = series[k + 1] - series[k];
        out[k] = static_cast<double>((d > 0.0) - (d < 0.0));
    }
    return TimeSeries(std::move(out), series.sampling_period());
}

} // namespace entemd
