#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "entemd/errors.hpp"
#include "entemd/spline.hpp"
#include "entemd/time_series.hpp"

namespace entemd {

// How envelopes are extended past the first/last extremum.
enum class BoundaryPolicy {
    mirror, // reflect the two outermost knots about each series endpoint
    clamp,  // treat the endpoint samples as knots
    none,   // interpolate the given knots only; linear beyond them
};

inline const char* boundary_policy_name(BoundaryPolicy p) {
    switch (p) {
    case BoundaryPolicy::mirror: return "mirror";
    case BoundaryPolicy::clamp: return "clamp";
    case BoundaryPolicy::none: return "none";
    }
    return "?";
}

inline BoundaryPolicy parse_boundary_policy(const std::string& name) {
    if (name == "mirror") return BoundaryPolicy::mirror;
    if (name == "clamp") return BoundaryPolicy::clamp;
    if (name == "none") return BoundaryPolicy::none;
    throw ParameterError("unknown boundary policy '" + name + "'");
}

struct SiftConfig {
    double sd_threshold = 0.2;
    int max_sift_iterations = 100;
    int max_imfs = 16;
    BoundaryPolicy boundary_policy = BoundaryPolicy::mirror;

    void validate() const {
        if (!(sd_threshold > 0.0)) throw ParameterError("sd_threshold must be > 0");
        if (max_sift_iterations < 1) throw ParameterError("max_sift_iterations must be >= 1");
        if (max_imfs < 1) throw ParameterError("max_imfs must be >= 1");
    }
};

// x = sum(imfs) + residue.
struct Decomposition {
    std::vector<TimeSeries> imfs;
    TimeSeries residue;
    std::vector<int> sift_counts; // one per IMF

    std::size_t size() const noexcept { return residue.size(); }
    double sampling_period() const noexcept { return residue.sampling_period(); }
};

struct Extrema {
    std::vector<std::size_t> maxima;
    std::vector<std::size_t> minima;
};

/**
 * Strict interior local extrema of a sampled curve.
 *
 * A flat run of equal values bounded on both sides by lower (higher) samples
 * counts as one maximum (minimum) at floor((first + last) / 2). Runs touching
 * either end of the series never count.
 */
inline Extrema find_extrema(std::span<const double> x) {
    if (x.size() < 3)
        throw StructuralError("find_extrema needs at least 3 samples, got " + std::to_string(x.size()));
    Extrema out;
    const std::size_t n = x.size();
    std::size_t i = 1;
    while (i + 1 < n) {
        std::size_t j = i;
        while (j + 1 < n && x[j + 1] == x[i]) ++j;
        if (j + 1 >= n) break; // run reaches the right edge
        const double left = x[i - 1];
        const double right = x[j + 1];
        const std::size_t mid = i + (j - i) / 2;
        if (x[i] > left && x[i] > right) out.maxima.push_back(mid);
        else if (x[i] < left && x[i] < right) out.minima.push_back(mid);
        i = j + 1;
    }
    return out;
}

inline Extrema find_extrema(const TimeSeries& s) { return find_extrema(s.samples()); }

/**
 * Natural cubic spline through (knot, x[knot]) evaluated at every sample index.
 *
 * Knots must be strictly increasing sample indices. Throws InsufficientExtrema
 * when fewer than 2 knots remain after boundary extension.
 */
inline TimeSeries spline_envelope(const TimeSeries& series, std::span<const std::size_t> knots,
                                  BoundaryPolicy policy) {
    const std::size_t n = series.size();
    for (std::size_t k = 0; k < knots.size(); ++k) {
        if (knots[k] >= n) throw StructuralError("envelope knot index out of range");
        if (k > 0 && knots[k] <= knots[k - 1]) throw StructuralError("envelope knots must be strictly increasing");
    }

    std::vector<double> xs;
    std::vector<double> ys;
    xs.reserve(knots.size() + 4);
    ys.reserve(knots.size() + 4);
    const auto push = [&](double pos, double val) {
        xs.push_back(pos);
        ys.push_back(val);
    };
    const double last = static_cast<double>(n - 1);

    if (policy == BoundaryPolicy::mirror && !knots.empty()) {
        // Reflections about index 0 of the first two knots, outermost first.
        for (std::size_t k = std::min<std::size_t>(2, knots.size()); k-- > 0;) {
            if (knots[k] > 0) push(-static_cast<double>(knots[k]), series[knots[k]]);
        }
    } else if (policy == BoundaryPolicy::clamp && (knots.empty() || knots.front() > 0)) {
        push(0.0, series[0]);
    }
    for (std::size_t k : knots) push(static_cast<double>(k), series[k]);
    if (policy == BoundaryPolicy::mirror && !knots.empty()) {
        const std::size_t count = std::min<std::size_t>(2, knots.size());
        for (std::size_t k = 0; k < count; ++k) {
            const std::size_t idx = knots[knots.size() - 1 - k];
            if (idx < n - 1) push(2.0 * last - static_cast<double>(idx), series[idx]);
        }
    } else if (policy == BoundaryPolicy::clamp && (knots.empty() || knots.back() < n - 1)) {
        push(last, series[n - 1]);
    }

    if (xs.size() < 2)
        throw InsufficientExtrema("envelope needs at least 2 knots after boundary extension, got " +
                                  std::to_string(xs.size()));

    const NaturalCubicSpline spline(std::move(xs), std::move(ys));
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = spline(static_cast<double>(i));
    return TimeSeries(std::move(out), series.sampling_period());
}

inline TimeSeries local_mean(const TimeSeries& upper, const TimeSeries& lower) {
    detail::require_same_length(upper, lower, "local_mean");
    std::vector<double> out(upper.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = 0.5 * (upper[i] + lower[i]);
    return TimeSeries(std::move(out), upper.sampling_period());
}

// Fewer than 2 maxima or fewer than 2 minima: nothing left to sift.
inline bool has_residue_condition(const Extrema& e) { return e.maxima.size() < 2 || e.minima.size() < 2; }

inline bool is_residue(const TimeSeries& s) {
    return s.size() < 3 || has_residue_condition(find_extrema(s));
}

// One sifting step: subtract the mean of the extrema envelopes.
inline TimeSeries sift_once(const TimeSeries& series, BoundaryPolicy policy) {
    if (series.size() < 3) throw InsufficientExtrema("series too short to sift");
    const Extrema e = find_extrema(series);
    if (has_residue_condition(e))
        throw InsufficientExtrema("sifting needs >= 2 maxima and >= 2 minima (have " +
                                  std::to_string(e.maxima.size()) + " and " + std::to_string(e.minima.size()) + ")");
    const TimeSeries upper = spline_envelope(series, e.maxima, policy);
    const TimeSeries lower = spline_envelope(series, e.minima, policy);
    return series - local_mean(upper, lower);
}

/**
 * Sign changes between consecutive nonzero samples. A run of zeros between
 * samples of opposite sign counts once; zeros touched from one side only do
 * not count.
 */
inline std::size_t count_zero_crossings(std::span<const double> x) {
    std::size_t crossings = 0;
    int prev_sign = 0;
    for (double v : x) {
        const int sign = (v > 0.0) - (v < 0.0);
        if (sign == 0) continue;
        if (prev_sign != 0 && sign != prev_sign) ++crossings;
        prev_sign = sign;
    }
    return crossings;
}

struct ImfCheck {
    bool ok;
    std::size_t extrema_count;
    std::size_t zero_crossings;
};

inline ImfCheck is_imf(std::span<const double> x) {
    if (x.size() < 3) throw StructuralError("is_imf needs at least 3 samples");
    const Extrema e = find_extrema(x);
    const std::size_t extrema = e.maxima.size() + e.minima.size();
    const std::size_t crossings = count_zero_crossings(x);
    const std::size_t diff = extrema > crossings ? extrema - crossings : crossings - extrema;
    return {diff <= 1, extrema, crossings};
}

inline ImfCheck is_imf(const TimeSeries& s) { return is_imf(s.samples()); }

/**
 * is_imf restricted to the span between the third extremum and the third
 * from last, so the two outermost extrema at each end (where envelope end
 * effects live) do not enter the comparison. Trivially true with fewer than
 * five extrema.
 */
inline ImfCheck is_imf_interior(const TimeSeries& s) {
    if (s.size() < 3) throw StructuralError("is_imf needs at least 3 samples");
    const Extrema e = find_extrema(s);
    std::vector<std::size_t> all = e.maxima;
    all.insert(all.end(), e.minima.begin(), e.minima.end());
    std::sort(all.begin(), all.end());
    if (all.size() < 5) return {true, all.size(), count_zero_crossings(s.samples())};
    const std::size_t first = all[2];
    const std::size_t last = all[all.size() - 3];
    const std::size_t extrema = all.size() - 4;
    const std::size_t crossings = count_zero_crossings(s.samples().subspan(first, last - first + 1));
    const std::size_t diff = extrema > crossings ? extrema - crossings : crossings - extrema;
    return {diff <= 1, extrema, crossings};
}

// Cauchy-type convergence measure sum((prev - next)^2) / sum(prev^2).
inline double sift_sd(const TimeSeries& prev, const TimeSeries& next) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < prev.size(); ++i) {
        const double d = prev[i] - next[i];
        num += d * d;
        den += prev[i] * prev[i];
    }
    if (den == 0.0) return num == 0.0 ? 0.0 : HUGE_VAL;
    return num / den;
}

struct ImfResult {
    TimeSeries imf;
    int iterations;
};

/**
 * Sifts until the SD between successive candidates drops below
 * config.sd_threshold and the candidate passes is_imf_interior, or until
 * max_sift_iterations is reached. If a later sift hits
 * the residue condition the current candidate is returned; on the first sift
 * the InsufficientExtrema error propagates.
 */
inline ImfResult extract_imf(const TimeSeries& series, const SiftConfig& config) {
    config.validate();
    TimeSeries current = sift_once(series, config.boundary_policy);
    double sd = sift_sd(series, current);
    int iterations = 1;
    while ((sd >= config.sd_threshold || !is_imf_interior(current).ok) && iterations < config.max_sift_iterations) {
        if (is_residue(current)) break;
        TimeSeries next = sift_once(current, config.boundary_policy);
        sd = sift_sd(current, next);
        current = std::move(next);
        ++iterations;
    }
    return {std::move(current), iterations};
}

inline Decomposition decompose(const TimeSeries& series, const SiftConfig& config = {}) {
    config.validate();
    if (series.size() < 4)
        throw StructuralError("decompose needs at least 4 samples, got " + std::to_string(series.size()));
    std::vector<TimeSeries> imfs;
    std::vector<int> counts;
    TimeSeries remainder = series;
    while (static_cast<int>(imfs.size()) < config.max_imfs && !is_residue(remainder)) {
        ImfResult r = extract_imf(remainder, config);
        remainder = remainder - r.imf;
        imfs.push_back(std::move(r.imf));
        counts.push_back(r.iterations);
    }
    return Decomposition{std::move(imfs), std::move(remainder), std::move(counts)};
}

inline TimeSeries reconstruct(const Decomposition& d) {
    std::vector<double> sum(d.residue.size(), 0.0);
    for (const TimeSeries& imf : d.imfs) {
        detail::require_same_length(imf, d.residue, "reconstruct");
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += imf[i];
    }
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += d.residue[i];
    return TimeSeries(std::move(sum), d.residue.sampling_period());
}


/**
 * Overall orthogonality index: sum over IMF pairs j != k of <c_j, c_k>
 * divided by the signal energy. Diagnostic only.
 */
inline double orthogonality_index(const Decomposition& d) {
    const TimeSeries x = reconstruct(d);
    double energy = 0.0;
    for (double v : x.samples()) energy += v * v;
    if (energy == 0.0) return 0.0;
    double cross = 0.0;
    for (std::size_t j = 0; j < d.imfs.size(); ++j) {
        for (std::size_t k = j + 1; k < d.imfs.size(); ++k) {
            double dot = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) dot += d.imfs[j][i] * d.imfs[k][i];
            cross += 2.0 * dot;
        }
    }
    return std::abs(cross) / energy;
}

} // namespace entemd
