#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "entemd/errors.hpp"
#include "entemd/time_series.hpp"

namespace entemd {

// Carrier sinusoid with a rectangular-envelope burst of a faster sinusoid
// on [burst_onset, burst_offset), plus optional white Gaussian noise.
struct IntermittencyScenario {
    double carrier_frequency = 1.0;    // Hz
    double carrier_amplitude = 1.0;
    double burst_frequency = 20.0;     // Hz
    double burst_amplitude = 0.5;
    std::size_t burst_onset = 2000;    // sample index, inclusive
    std::size_t burst_offset = 3000;   // sample index, exclusive
    double noise_stddev = 0.0;
    std::size_t length = 6000;
    double sampling_period = 1e-3;     // seconds

    void validate() const {
        if (length == 0)
            throw ParameterError("length must be positive");
        if (!(burst_onset < burst_offset))
            throw ParameterError("burst_onset must be < burst_offset");
        if (burst_offset > length)
            throw ParameterError("burst_offset must be <= length");
        if (!(burst_frequency > carrier_frequency))
            throw ParameterError("burst_frequency must exceed carrier_frequency");
        if (!(noise_stddev >= 0.0) || !std::isfinite(noise_stddev))
            throw ParameterError("noise_stddev must be nonnegative");
        if (!(sampling_period > 0.0) || !std::isfinite(sampling_period))
            throw ParameterError("sampling_period must be positive");
        if (!std::isfinite(carrier_frequency) || !std::isfinite(carrier_amplitude) ||
            !std::isfinite(burst_frequency) || !std::isfinite(burst_amplitude))
            throw ParameterError("carrier/burst parameters must be finite");
    }
};

struct SyntheticSignal {
    TimeSeries signal;
    TimeSeries ground_truth; // burst component alone, zero outside the burst
};

inline SyntheticSignal make_intermittent_signal(const IntermittencyScenario& s, std::uint64_t seed) {
    s.validate();
    constexpr double two_pi = 2.0 * std::numbers::pi;

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, s.noise_stddev > 0.0 ? s.noise_stddev : 1.0);

    std::vector<double> signal(s.length);
    std::vector<double> truth(s.length, 0.0);
    for (std::size_t i = 0; i < s.length; ++i) {
        const double t = static_cast<double>(i) * s.sampling_period;
        double value = s.carrier_amplitude * std::sin(two_pi * s.carrier_frequency * t);
        if (i >= s.burst_onset && i < s.burst_offset) {
            truth[i] = s.burst_amplitude * std::sin(two_pi * s.burst_frequency * t);
            value += truth[i];
        }
        if (s.noise_stddev > 0.0) value += noise(rng);
        signal[i] = value;
    }
    return {TimeSeries(std::move(signal), s.sampling_period),
            TimeSeries(std::move(truth), s.sampling_period)};
}

} // namespace entemd
