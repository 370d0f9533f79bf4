#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "entemd/errors.hpp"

namespace entemd {

/**
 * Uniformly sampled real-valued signal.
 *
 * Sample k sits at time k * sampling_period(). The constructor enforces the
 * invariants: at least one sample, all samples finite, positive period.
 */
class TimeSeries {
public:
    TimeSeries(std::vector<double> samples, double sampling_period)
        : samples_(std::move(samples)), sampling_period_(sampling_period) {
        if (samples_.empty())
            throw ParameterError("time series must contain at least one sample");
        if (!(sampling_period_ > 0.0) || !std::isfinite(sampling_period_))
            throw ParameterError("sampling_period must be positive and finite");
        for (std::size_t i = 0; i < samples_.size(); ++i) {
            if (!std::isfinite(samples_[i]))
                throw ParameterError("sample " + std::to_string(i) + " is not finite");
        }
    }

    // Zero-filled series of the given length.
    static TimeSeries zeros(std::size_t length, double sampling_period) {
        return TimeSeries(std::vector<double>(length, 0.0), sampling_period);
    }

    std::size_t size() const noexcept { return samples_.size(); }
    double sampling_period() const noexcept { return sampling_period_; }
    double duration() const noexcept { return static_cast<double>(size()) * sampling_period_; }

    std::span<const double> samples() const noexcept { return samples_; }
    const std::vector<double>& values() const noexcept { return samples_; }
    double operator[](std::size_t i) const noexcept { return samples_[i]; }

    // Copy of samples [first, last) with the same sampling period.
    TimeSeries slice(std::size_t first, std::size_t last) const {
        if (first >= last || last > size())
            throw StructuralError("slice [" + std::to_string(first) + ", " + std::to_string(last) +
                                  ") out of range for length " + std::to_string(size()));
        return TimeSeries(std::vector<double>(samples_.begin() + static_cast<std::ptrdiff_t>(first),
                                              samples_.begin() + static_cast<std::ptrdiff_t>(last)),
                          sampling_period_);
    }

    friend bool operator==(const TimeSeries&, const TimeSeries&) = default;

private:
    std::vector<double> samples_;
    double sampling_period_;
};

namespace detail {

inline void require_same_length(const TimeSeries& a, const TimeSeries& b, const char* what) {
    if (a.size() != b.size())
        throw StructuralError(std::string(what) + ": length mismatch (" + std::to_string(a.size()) +
                              " vs " + std::to_string(b.size()) + ")");
}

} // namespace detail

inline TimeSeries operator+(const TimeSeries& a, const TimeSeries& b) {
    detail::require_same_length(a, b, "series addition");
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] + b[i];
    return TimeSeries(std::move(out), a.sampling_period());
}

inline TimeSeries operator-(const TimeSeries& a, const TimeSeries& b) {
    detail::require_same_length(a, b, "series subtraction");
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] - b[i];
    return TimeSeries(std::move(out), a.sampling_period());
}

// Pearson correlation of two equal-length sample ranges; 0 when either is constant.
inline double correlation(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw StructuralError("correlation: length mismatch");
    const std::size_t n = a.size();
    if (n == 0) return 0.0;
    double mean_a = 0.0, mean_b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mean_a += a[i];
        mean_b += b[i];
    }
    mean_a /= static_cast<double>(n);
    mean_b /= static_cast<double>(n);
    double cov = 0.0, var_a = 0.0, var_b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double da = a[i] - mean_a;
        const double db = b[i] - mean_b;
        cov += da * db;
        var_a += da * da;
        var_b += db * db;
    }
    if (var_a <= 0.0 || var_b <= 0.0) return 0.0;
    return cov / std::sqrt(var_a * var_b);
}

inline double correlation(const TimeSeries& a, const TimeSeries& b) {
    return correlation(a.samples(), b.samples());
}

} // namespace entemd
