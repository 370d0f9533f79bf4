#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "entemd/series_io.hpp"
#include "entemd/synth.hpp"
#include "oracles.hpp"

using namespace entemd;

namespace {

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("entemd_test_" + name);
}

void write_text(const std::filesystem::path& p, const std::string& text) {
    std::ofstream(p, std::ios::binary) << text;
}

} // namespace

TEST(TimeSeries, RejectsInvalidConstruction) {
    EXPECT_THROW(TimeSeries({}, 1.0), ParameterError);
    EXPECT_THROW(TimeSeries({1.0}, 0.0), ParameterError);
    EXPECT_THROW(TimeSeries({1.0}, -1.0), ParameterError);
    EXPECT_THROW(TimeSeries({1.0, NAN}, 1.0), ParameterError);
    EXPECT_THROW(TimeSeries({INFINITY}, 1.0), ParameterError);
    EXPECT_NO_THROW(TimeSeries({0.0}, 1e-3));
}

TEST(TimeSeries, SliceAndArithmetic) {
    const TimeSeries a({1, 2, 3, 4}, 0.5);
    const TimeSeries s = a.slice(1, 3);
    EXPECT_EQ(s.values(), (std::vector<double>{2, 3}));
    EXPECT_EQ(s.sampling_period(), 0.5);
    EXPECT_THROW(a.slice(2, 2), StructuralError);
    EXPECT_THROW(a.slice(0, 5), StructuralError);
    EXPECT_EQ((a - a).values(), std::vector<double>(4, 0.0));
    EXPECT_THROW(a + s, StructuralError);
}

TEST(Synth, DegenerateBurstIsPureCarrier) {
    IntermittencyScenario s;
    s.burst_amplitude = 0.0;
    s.noise_stddev = 0.0;
    const auto sig = make_intermittent_signal(s, 3);
    const auto carrier = oracle::sine(s.length, s.carrier_frequency, s.sampling_period);
    for (std::size_t i = 0; i < s.length; ++i) {
        EXPECT_NEAR(sig.signal[i], carrier[i], 1e-12);
        EXPECT_EQ(sig.ground_truth[i], 0.0);
    }
}

TEST(Synth, CanonicalScenarioMatchesClosedForm) {
    const IntermittencyScenario s; // defaults are the canonical scenario
    const auto sig = make_intermittent_signal(s, 0);
    const double two_pi = 2.0 * std::numbers::pi;
    for (std::size_t i : {2500u, 2512u, 2999u}) {
        const double t = static_cast<double>(i) * 1e-3;
        const double expected = std::sin(two_pi * 1.0 * t) + 0.5 * std::sin(two_pi * 20.0 * t);
        EXPECT_NEAR(sig.signal[i], expected, 1e-12) << i;
    }
    EXPECT_NEAR(sig.signal[2500], 1.5945167614379127e-15, 1e-12);
    EXPECT_NEAR(sig.signal[1000], std::sin(two_pi * 1.0), 1e-12);
}

TEST(Synth, DeterministicAndTruthSupported) {
    std::mt19937_64 rng(11);
    for (int k = 0; k < 5; ++k) {
        const IntermittencyScenario s = oracle::random_scenario(rng);
        const auto a = make_intermittent_signal(s, 99);
        const auto b = make_intermittent_signal(s, 99);
        EXPECT_EQ(a.signal, b.signal);
        EXPECT_EQ(a.ground_truth, b.ground_truth);
        for (std::size_t i = 0; i < s.length; ++i) {
            if (i < s.burst_onset || i >= s.burst_offset) {
                EXPECT_EQ(a.ground_truth[i], 0.0);
            }
        }
        const auto c = make_intermittent_signal(s, 100);
        if (s.noise_stddev > 0.0) {
            EXPECT_NE(a.signal, c.signal);
        }
    }
}

TEST(Synth, RejectsInvalidScenario) {
    IntermittencyScenario s;
    s.burst_onset = 3000;
    s.burst_offset = 3000;
    EXPECT_THROW(make_intermittent_signal(s, 0), ParameterError);
    s = {};
    s.burst_offset = 7000;
    EXPECT_THROW(make_intermittent_signal(s, 0), ParameterError);
    s = {};
    s.burst_frequency = 0.5;
    try {
        make_intermittent_signal(s, 0);
        FAIL();
    } catch (const ParameterError& e) {
        EXPECT_NE(std::string(e.what()).find("burst_frequency"), std::string::npos);
    }
    s = {};
    s.noise_stddev = -1.0;
    EXPECT_THROW(make_intermittent_signal(s, 0), ParameterError);
}

TEST(SeriesIo, ParsesCsvWithAndWithoutHeader) {
    EXPECT_EQ(parse_csv_series("0.0\n1.0\n0.0", 1.0).values(), (std::vector<double>{0, 1, 0}));
    EXPECT_EQ(parse_csv_series("value\n0.5\r\n-2e-3\n\n", 2.0).values(), (std::vector<double>{0.5, -2e-3}));
    EXPECT_EQ(parse_csv_series("value\n0.5\n", 2.0).sampling_period(), 2.0);
}

TEST(SeriesIo, CsvErrors) {
    EXPECT_THROW(parse_csv_series("", 1.0), ParseError);
    EXPECT_THROW(parse_csv_series("value\n", 1.0), ParseError);
    try {
        parse_csv_series("1.0\nNaN\n", 1.0);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
        EXPECT_NE(std::string(e.what()).find("row 2"), std::string::npos);
    }
    try {
        parse_csv_series("1.0\n2.0\nabc\n", 1.0);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
    }
    EXPECT_THROW(parse_csv_series("1.0,2.0\n", 1.0), ParseError);
    EXPECT_THROW(parse_csv_series("inf\n", 1.0), ParseError);
}

TEST(SeriesIo, JsonParsing) {
    const TimeSeries s = parse_json_series(R"({"sampling_period": 0.25, "samples": [1, 2.5, -3]})");
    EXPECT_EQ(s.values(), (std::vector<double>{1, 2.5, -3}));
    EXPECT_EQ(s.sampling_period(), 0.25);
    EXPECT_THROW(parse_json_series(R"({"sampling_period": 0.25, "samples": []})"), ParseError);
    EXPECT_THROW(parse_json_series(R"({"samples": [1]})"), ParseError);
    EXPECT_THROW(parse_json_series(R"({"sampling_period": 0, "samples": [1]})"), ParseError);
    EXPECT_THROW(parse_json_series(R"({"sampling_period": 1, "samples": [1, null]})"), ParseError);
    EXPECT_THROW(parse_json_series("{not json"), ParseError);
}

TEST(SeriesIo, FileRoundTrip) {
    const auto path = temp_path("roundtrip.csv");
    write_series(TimeSeries({0.5, -0.25}, 1.0), path, SeriesFormat::csv);
    EXPECT_EQ(load_series(path, SeriesFormat::csv).values(), (std::vector<double>{0.5, -0.25}));

    write_series(TimeSeries({1.0 / 3.0}, 1.0), path, SeriesFormat::csv);
    const double third = load_series(path, SeriesFormat::csv)[0];
    EXPECT_LE(std::abs(third - 1.0 / 3.0), 1e-15 * (1.0 / 3.0));
    std::filesystem::remove(path);
}

// load(write(s)) reproduces every sample for arbitrary finite doubles, both formats.
TEST(SeriesIo, RoundTripProperty) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> mant(-1.0, 1.0);
    std::uniform_int_distribution<int> expo(-300, 300);
    for (auto fmt : {SeriesFormat::csv, SeriesFormat::json}) {
        const auto path = temp_path(std::string("prop.") + format_name(fmt));
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<double> v(50);
            for (double& x : v) x = std::ldexp(mant(rng), expo(rng));
            const TimeSeries s(v, 1e-3 * (trial + 1));
            write_series(s, path, fmt);
            const TimeSeries back = load_series(path, fmt, s.sampling_period());
            ASSERT_EQ(back.size(), s.size());
            for (std::size_t i = 0; i < s.size(); ++i)
                EXPECT_LE(std::abs(back[i] - s[i]), 1e-15 * std::abs(s[i]));
            EXPECT_EQ(back.sampling_period(), s.sampling_period());
        }
        std::filesystem::remove(path);
    }
}

TEST(SeriesIo, LoadErrorsCarryPath) {
    const auto path = temp_path("empty.csv");
    write_text(path, "");
    try {
        load_series(path, SeriesFormat::csv);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find(path.string()), std::string::npos);
    }
    std::filesystem::remove(path);
    EXPECT_THROW(load_series(temp_path("does_not_exist.csv"), SeriesFormat::csv), IoError);
}

TEST(SeriesIo, UnwritablePathIsIoError) {
    try {
        write_series(TimeSeries({1.0}, 1.0), "/nonexistent_dir_entemd/out.csv", SeriesFormat::csv);
        FAIL();
    } catch (const IoError& e) {
        EXPECT_NE(std::string(e.what()).find("/nonexistent_dir_entemd/out.csv"), std::string::npos);
    }
}
