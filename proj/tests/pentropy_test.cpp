#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "entemd/pentropy.hpp"
#include "oracles.hpp"

using namespace entemd;

namespace {

const double ln6 = std::log(6.0);

// Length-8 sequence whose six length-3 windows show six distinct patterns,
// found by exhaustive search over permutations of 0..7.
std::vector<double> all_patterns_once() {
    std::vector<int> p(8);
    std::iota(p.begin(), p.end(), 0);
    do {
        std::vector<double> v(p.begin(), p.end());
        const auto dist = oracle::brute_force_distribution(v, 3);
        if (std::all_of(dist.begin(), dist.end(), [](double x) { return x > 0.0; })) return v;
    } while (std::next_permutation(p.begin(), p.end()));
    return {};
}

} // namespace

TEST(OrdinalPattern, Ranks) {
    EXPECT_EQ(ordinal_pattern(std::vector<double>{1, 2, 3}, 3).ranks, (std::vector<int>{0, 1, 2}));
    EXPECT_EQ(ordinal_pattern(std::vector<double>{3, 1, 2}, 3).ranks, (std::vector<int>{2, 0, 1}));
    EXPECT_EQ(ordinal_pattern(std::vector<double>{5, 5, 5}, 3).ranks, (std::vector<int>{0, 1, 2}));
    EXPECT_EQ(ordinal_pattern(std::vector<double>{2, 1, 2}, 3).ranks, (std::vector<int>{1, 0, 2}));
    EXPECT_THROW(ordinal_pattern(std::vector<double>{1, 2}, 3), StructuralError);
}

TEST(OrdinalPattern, SixDistinctPatternsForOrderThree) {
    std::vector<int> p{0, 1, 2};
    std::vector<std::size_t> seen;
    do {
        const std::vector<double> w(p.begin(), p.end());
        const OrdinalPattern pat = ordinal_pattern(w, 3);
        seen.push_back(pat.index());
    } while (std::next_permutation(p.begin(), p.end()));
    std::sort(seen.begin(), seen.end());
    EXPECT_EQ(seen, (std::vector<std::size_t>{0, 1, 2, 3, 4, 5}));
    EXPECT_EQ(factorial(3), 6u);
}

TEST(PatternDistribution, MonotoneSegmentIsSinglePattern) {
    std::vector<double> s(20);
    std::iota(s.begin(), s.end(), 0.0);
    const auto p = pattern_distribution(s, 3);
    EXPECT_EQ(p[0], 1.0);
    for (std::size_t i = 1; i < p.size(); ++i) EXPECT_EQ(p[i], 0.0);
}

TEST(PatternDistribution, AlternatingSegment) {
    const std::vector<double> s{1, 2, 1, 2, 1, 2, 1};
    const auto p = pattern_distribution(s, 3);
    const auto ref = oracle::brute_force_distribution(s, 3);
    EXPECT_EQ(p, ref);
    const std::size_t up = ordinal_pattern(std::vector<double>{1, 2, 1}, 3).index();
    const std::size_t down = ordinal_pattern(std::vector<double>{2, 1, 2}, 3).index();
    EXPECT_DOUBLE_EQ(p[up], 3.0 / 5.0);
    EXPECT_DOUBLE_EQ(p[down], 2.0 / 5.0);
}

TEST(PatternDistribution, CountsSumToWindowCount) {
    std::mt19937_64 rng(9);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> s(3 + trial * 7);
        for (double& v : s) v = g(rng);
        for (int m : {2, 3, 4, 5}) {
            if (s.size() < static_cast<std::size_t>(m)) continue;
            const auto counts = pattern_counts(s, m);
            EXPECT_EQ(std::accumulate(counts.begin(), counts.end(), std::size_t{0}), s.size() - m + 1);
            const auto p = pattern_distribution(s, m);
            // Counts sum exactly; the probabilities only up to summation rounding.
            EXPECT_NEAR(std::accumulate(p.begin(), p.end(), 0.0), 1.0, 1e-13);
        }
    }
}

TEST(PatternDistribution, TooShortSegment) {
    EXPECT_THROW(pattern_distribution(std::vector<double>{1, 2}, 3), StructuralError);
}

TEST(PatternDistribution, MatchesBruteForceSorter) {
    std::mt19937_64 rng(123);
    std::uniform_int_distribution<int> len(3, 12);
    std::uniform_int_distribution<int> small(0, 4); // ties are common
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<double> s(static_cast<std::size_t>(len(rng)));
        for (double& v : s) v = trial % 2 ? g(rng) : small(rng);
        ASSERT_EQ(pattern_distribution(s, 3), oracle::brute_force_distribution(s, 3)) << trial;
    }
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> s(12);
        for (double& v : s) v = small(rng);
        ASSERT_EQ(pattern_distribution(s, 4), oracle::brute_force_distribution(s, 4));
    }
}

TEST(PermutationEntropy, AnalyticValues) {
    std::vector<double> mono(120);
    std::iota(mono.begin(), mono.end(), 0.0);
    EXPECT_EQ(permutation_entropy(mono), 0.0);

    const auto uniform = all_patterns_once();
    ASSERT_EQ(uniform.size(), 8u);
    EXPECT_NEAR(permutation_entropy(uniform), ln6, 1e-12);
    EXPECT_NEAR(ln6, 1.791759469228055, 1e-15);

    EXPECT_NEAR(permutation_entropy(std::vector<double>{1, 2, 1, 2, 1, 2, 1}), 0.6730116670092565, 1e-12);

    PeConfig norm;
    norm.normalize = true;
    EXPECT_NEAR(permutation_entropy(uniform, norm), 1.0, 1e-12);
}

TEST(PermutationEntropy, RangeProperty) {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> small(0, 3);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> s(30);
        for (double& v : s) v = small(rng);
        const double h = permutation_entropy(s);
        EXPECT_GE(h, 0.0);
        EXPECT_LE(h, ln6 + 1e-12);
        const auto p = pattern_distribution(s, 3);
        const bool single = std::any_of(p.begin(), p.end(), [](double x) { return x == 1.0; });
        EXPECT_EQ(h == 0.0, single);
    }
}

TEST(PermutationEntropy, ScaleInvariance) {
    std::mt19937_64 rng(31);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> s(120);
        for (double& v : s) v = g(rng);
        const double h = permutation_entropy(s);
        for (double a : {0.5, 3.0}) {
            for (double b : {-1.0, 10.0}) {
                std::vector<double> t(s);
                for (double& v : t) v = a * v + b;
                EXPECT_EQ(permutation_entropy(t), h);
            }
        }
    }
}

TEST(PermutationEntropy, TimeReversalPermutesDistribution) {
    std::mt19937_64 rng(41);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> s(50);
        for (double& v : s) v = g(rng); // continuous values: tie-free
        std::vector<double> r(s.rbegin(), s.rend());
        auto p = pattern_distribution(s, 3);
        auto q = pattern_distribution(r, 3);
        std::sort(p.begin(), p.end());
        std::sort(q.begin(), q.end());
        EXPECT_EQ(p, q);
        EXPECT_EQ(shannon_entropy(p), shannon_entropy(q));
    }
}

TEST(PeConfig, ValidityAndInvariants) {
    PeConfig c;
    EXPECT_EQ(c.window_length, 120u);
    EXPECT_EQ(c.order, 3);
    EXPECT_EQ(c.step, 1u);
    EXPECT_TRUE(c.statistically_valid()); // 118 > 100
    c.window_length = 102;
    EXPECT_FALSE(c.statistically_valid()); // 100 is not > 100
    c.window_length = 103;
    EXPECT_TRUE(c.statistically_valid());
    c.order = 1;
    EXPECT_THROW(c.validate(), ParameterError);
    c = {};
    c.window_length = 2;
    EXPECT_THROW(c.validate(), ParameterError);
    c = {};
    c.step = 0;
    EXPECT_THROW(c.validate(), ParameterError);
}

TEST(EntropyProfile, LengthAndAlignment) {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g;
    std::vector<double> s(1000);
    for (double& v : s) v = g(rng);
    const EntropyProfile p = entropy_profile(s);
    EXPECT_EQ(p.size(), 881u);
    EXPECT_EQ(p.first_index, 60u);
    EXPECT_EQ(p.anchor(0), 60u);
    EXPECT_EQ(p.anchor(880), 940u);
    EXPECT_TRUE(p.warnings.empty());

    PeConfig c;
    c.step = 7;
    const EntropyProfile q = entropy_profile(s, c);
    EXPECT_EQ(q.size(), (1000u - 120u) / 7u + 1u);
    EXPECT_EQ(q.anchor(3), 60u + 21u);
}

TEST(EntropyProfile, ValuesEqualPerWindowEntropy) {
    std::mt19937_64 rng(6);
    std::uniform_int_distribution<int> small(0, 5);
    std::vector<double> s(700);
    for (double& v : s) v = small(rng);
    for (std::size_t step : {1u, 3u, 50u, 200u}) {
        PeConfig c;
        c.step = step;
        const EntropyProfile p = entropy_profile(s, c);
        for (std::size_t i = 0; i < p.size(); ++i) {
            const std::span<const double> w(s.data() + p.window_start(i), c.window_length);
            ASSERT_EQ(p.values[i], permutation_entropy(w, c)) << "step " << step << " i " << i;
        }
    }
}

TEST(EntropyProfile, ConstantSeriesIsZero) {
    const EntropyProfile p = entropy_profile(std::vector<double>(500, 1.25));
    for (double v : p.values) EXPECT_EQ(v, 0.0);
}

TEST(EntropyProfile, WhiteNoiseNearMaximum) {
    std::mt19937_64 rng(2718);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> s(10000);
    for (double& v : s) v = u(rng);
    const EntropyProfile p = entropy_profile(s);
    const double mean = std::accumulate(p.values.begin(), p.values.end(), 0.0) / static_cast<double>(p.size());
    EXPECT_LE(std::abs(mean - ln6), 0.05 * ln6);
    for (double v : p.values) {
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, ln6);
    }
}

TEST(EntropyProfile, ShortSeriesAndWarning) {
    EXPECT_THROW(entropy_profile(std::vector<double>(100, 0.0)), StructuralError);
    PeConfig c;
    c.window_length = 50;
    const EntropyProfile p = entropy_profile(std::vector<double>(100, 0.0), c);
    EXPECT_EQ(p.warnings.size(), 1u);
}

TEST(GradientTransform, Signs) {
    EXPECT_EQ(gradient_transform(TimeSeries({1, 3, 2}, 1.0)).values(), (std::vector<double>{1, -1}));
    EXPECT_EQ(gradient_transform(TimeSeries({2, 2}, 1.0)).values(), (std::vector<double>{0}));
    EXPECT_THROW(gradient_transform(TimeSeries({2}, 1.0)), StructuralError);

    std::mt19937_64 rng(8);
    std::uniform_int_distribution<int> small(-2, 2);
    std::vector<double> s(300);
    for (double& v : s) v = small(rng);
    const TimeSeries g = gradient_transform(TimeSeries(s, 0.1));
    EXPECT_EQ(g.size(), 299u);
    EXPECT_EQ(g.sampling_period(), 0.1);
    for (double v : g.samples()) EXPECT_TRUE(v == -1.0 || v == 0.0 || v == 1.0);
}

TEST(GradientTransform, BlindToAmplitudeChange) {
    // 5 Hz sine whose amplitude doubles at an arbitrary mid-series sample.
    const std::size_t n = 6000;
    auto s = oracle::sine(n, 5.0, 1e-3, 1.0, 0.4);
    for (std::size_t i = 3170; i < n; ++i) s[i] *= 2.0;
    const TimeSeries x(s, 1e-3);

    const auto region_mean = [](const EntropyProfile& p, std::size_t lo, std::size_t hi) {
        double sum = 0.0;
        std::size_t count = 0;
        for (std::size_t i = 0; i < p.size(); ++i)
            if (p.anchor(i) >= lo && p.anchor(i) < hi) {
                sum += p.values[i];
                ++count;
            }
        return sum / static_cast<double>(count);
    };
    const EntropyProfile grad = entropy_profile(gradient_transform(x));
    const double base = region_mean(grad, 500, 2500);
    const double burst = region_mean(grad, 3800, 5800);
    EXPECT_LE(std::abs(burst - base), 0.10 * base);
}
