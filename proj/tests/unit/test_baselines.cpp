#include <cmath>

#include <gtest/gtest.h>

#include "abba/baselines.hpp"
#include "abba/normal.hpp"
#include "abba/synthetic.hpp"
#include "oracles.hpp"

using namespace abba;

TEST(NormalQuantile, MatchesReference) {
    for (double p : {1e-10, 1e-4, 0.01, 0.02425, 0.1, 0.3, 0.5, 0.7, 0.97575, 0.999, 1 - 1e-9}) {
        EXPECT_NEAR(normal_quantile(p), oracle::normal_quantile(p), 1e-9 * std::max(1.0, std::abs(oracle::normal_quantile(p))));
    }
    EXPECT_THROW(normal_quantile(0.0), InvalidInput);
    EXPECT_THROW(normal_quantile(1.0), InvalidInput);
}

TEST(Breakpoints, KnownValues) {
    const auto b4 = gaussian_breakpoints(4);
    ASSERT_EQ(b4.size(), 3u);
    EXPECT_NEAR(b4[0], -0.6744897501960817, 1e-12);
    EXPECT_EQ(b4[1], 0.0);
    EXPECT_NEAR(b4[2], 0.6744897501960817, 1e-12);
    const auto b3 = gaussian_breakpoints(3);
    EXPECT_NEAR(b3[1], 0.4307272992954576, 1e-12);
    EXPECT_EQ(b3[0], -b3[1]);
    EXPECT_THROW(gaussian_breakpoints(1), InvalidInput);
}

TEST(Breakpoints, MatchReferenceQuantiles) {
    for (std::size_t k = 2; k <= 20; ++k) {
        const auto b = gaussian_breakpoints(k);
        for (std::size_t i = 1; i < k; ++i) {
            EXPECT_NEAR(b[i - 1], oracle::normal_quantile(static_cast<double>(i) / static_cast<double>(k)), 1e-9);
        }
    }
}

TEST(Paa, SegmentMeansDropTail) {
    const Series s{1, 3, 5, 7, 9, 11, 100};
    EXPECT_EQ(paa(s, 2), (std::vector<double>{2, 6, 10}));
    EXPECT_THROW(paa(s, 8), InvalidInput);
    EXPECT_THROW(paa(s, 0), InvalidInput);
}

TEST(Sax, SymbolsAndReconstruction) {
    const Series s{-2, -2, 0, 0, 2, 2};
    const SaxConfig c{2, 3};
    const auto sym = sax_symbolize(s, c);
    EXPECT_EQ(sym, "abc");
    const auto rec = sax_reconstruct(sym, c);
    ASSERT_EQ(rec.size(), 6u);
    EXPECT_NEAR(rec[0], oracle::normal_quantile(1.0 / 6.0), 1e-12);
    EXPECT_EQ(rec[2], 0.0);
    EXPECT_NEAR(rec[5], -rec[0], 1e-12);
}

TEST(Sax, ValueOnBreakpointGoesUp) {
    const auto b = gaussian_breakpoints(4);
    EXPECT_EQ(region_of(0.0, b), 2u);
    EXPECT_EQ(region_of(-10.0, b), 0u);
    EXPECT_EQ(region_of(10.0, b), 3u);
}

TEST(FitLine, ExactOnLines) {
    const Series seg{1.0, 3.0, 5.0, 7.0};
    const auto l = fit_line(seg);
    EXPECT_DOUBLE_EQ(l.mean, 4.0);
    EXPECT_DOUBLE_EQ(l.slope, 2.0);
    EXPECT_EQ(fit_line(Series{3.0}).slope, 0.0);
}

TEST(OneDSax, EncodesMeanAndSlope) {
    OneDSaxConfig c;
    c.segment_len = 4;
    // Steep rising segment at high level, then flat low segment.
    const Series s{2, 3, 4, 5, -1.5, -1.5, -1.5, -1.5};
    const auto sym = onedsax_symbolize(s, c);
    ASSERT_EQ(sym.size(), 2u);
    EXPECT_EQ(index_of(sym[0]), 2u * 3 + 2);
    EXPECT_EQ(index_of(sym[1]), 0u * 3 + 1);
    const auto rec = onedsax_reconstruct(sym, c);
    ASSERT_EQ(rec.size(), 8u);
    // Flat segment: zero slope representative, constant output.
    EXPECT_EQ(rec[4], rec[7]);
    EXPECT_GT(rec[3], rec[0]);
}

TEST(OneDSax, SlopeBreakpointsScaleWithSegment) {
    OneDSaxConfig c;
    c.segment_len = 10;
    const double sigma = std::sqrt(0.03 / 10.0);
    const double cut = sigma * oracle::normal_quantile(2.0 / 3.0);
    Series up(10);
    Series down(10);
    for (std::size_t i = 0; i < 10; ++i) {
        up[i] = 1.01 * cut * static_cast<double>(i);
        down[i] = 0.99 * cut * static_cast<double>(i);
    }
    EXPECT_EQ(index_of(onedsax_symbolize(up, c)[0]) % 3, 2u);
    EXPECT_EQ(index_of(onedsax_symbolize(down, c)[0]) % 3, 1u);
}

TEST(OneDSax, RejectsBadConfig) {
    OneDSaxConfig c;
    c.k_mean = 1;
    EXPECT_THROW(onedsax_symbolize(Series{1, 2, 3}, c), InvalidInput);
    c.k_mean = 8;
    c.k_slope = 8;
    EXPECT_THROW(onedsax_symbolize(Series{1, 2, 3}, c), InvalidInput);
}
