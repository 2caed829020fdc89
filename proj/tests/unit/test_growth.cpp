#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include "clf/error.hpp"
#include "clf/growth.hpp"
#include "clf/random.hpp"
#include "clf/stats.hpp"

using namespace clf;

namespace {

GdpSeries parse(const std::string& text) {
    std::istringstream in(text);
    return parse_gdp_csv(in);
}

double rms(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s / static_cast<double>(a.size()));
}

std::vector<double> gaussian(std::size_t n, Rng& rng) {
    std::vector<double> out(n);
    for (auto& v : out)
        v = std::sqrt(-2.0 * std::log(uniform_open(rng))) * std::cos(2.0 * M_PI * uniform_open(rng));
    return out;
}

}  // namespace

TEST(GdpCsv, HappyPathWithAndWithoutHeader) {
    const auto a = parse("1800,1200\n1801,1212\n");
    ASSERT_EQ(a.size(), 2u);
    EXPECT_EQ(a.years[1], 1801);
    EXPECT_DOUBLE_EQ(a.values[1], 1212.0);
    const auto b = parse("year,gdp_per_capita\n# comment\n\n1800, 1200.5\r\n1801,1212\n");
    ASSERT_EQ(b.size(), 2u);
    EXPECT_DOUBLE_EQ(b.values[0], 1200.5);
}

TEST(GdpCsv, GapIsRejectedWithLine) {
    try {
        parse("1800,1200\n1802,1230\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
        EXPECT_NE(std::string(e.what()).find("non-contiguous years"), std::string::npos);
    }
}

TEST(GdpCsv, NonpositiveAndGarbage) {
    EXPECT_THROW(parse("1800,-5\n"), ParseError);
    EXPECT_THROW(parse("1800,0\n"), ParseError);
    try {
        parse("1800,1200\n1801,abc\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
        EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
    }
    EXPECT_THROW(parse("year,value\n"), InsufficientData);
    EXPECT_THROW(load_gdp_csv("/nonexistent/file.csv"), InvalidArgument);
}

TEST(RawGrowth, Definitions) {
    GdpSeries flat{{2000, 2001, 2002}, {5.0, 5.0, 5.0}};
    for (double r : raw_growth(flat).rates) EXPECT_DOUBLE_EQ(r, 0.0);

    GdpSeries expo;
    for (int t = 0; t < 10; ++t) {
        expo.years.push_back(1900 + t);
        expo.values.push_back(3.0 * std::exp(0.02 * t));
    }
    const auto g = raw_growth(expo);
    ASSERT_EQ(g.size(), 9u);
    EXPECT_EQ(g.years.front(), 1901);
    for (double r : g.rates) EXPECT_NEAR(r, 2.0, 1e-10);

    EXPECT_NEAR(raw_growth(GdpSeries{{1, 2}, {100, 110}}).rates[0], 9.531, 1e-3);
    EXPECT_THROW(raw_growth(GdpSeries{{1}, {100}}), InsufficientData);
}

TEST(Modwt, PerfectReconstruction) {
    Rng rng(51);
    const auto x = gaussian(203, rng);
    for (std::size_t levels : {1u, 3u, 5u}) {
        const auto dec = modwt(x, levels);
        ASSERT_EQ(dec.details.size(), levels);
        const auto y = inverse_modwt(dec);
        for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(y[i], x[i], 1e-12);
    }
}

TEST(Modwt, EnergyIsPreserved) {
    Rng rng(52);
    const auto x = gaussian(128, rng);
    const auto dec = modwt(x, 4);
    auto energy = [](const std::vector<double>& v) { return std::inner_product(v.begin(), v.end(), v.begin(), 0.0); };
    double total = energy(dec.smooth);
    for (const auto& w : dec.details) total += energy(w);
    EXPECT_NEAR(total, energy(x), 1e-9 * energy(x));
}

TEST(WaveletSmooth, ConstantSeriesUnchanged) {
    GrowthSeries g;
    for (int i = 0; i < 64; ++i) {
        g.years.push_back(1900 + i);
        g.rates.push_back(1.7);
    }
    const auto s = wavelet_smooth(g);
    EXPECT_EQ(s.years, g.years);
    for (double r : s.rates) EXPECT_NEAR(r, 1.7, 1e-12);
}

TEST(WaveletSmooth, DenoisesSine) {
    Rng rng(53);
    const std::size_t n = 200;
    GrowthSeries g;
    std::vector<double> clean(n);
    const auto noise = gaussian(n, rng);
    for (std::size_t t = 0; t < n; ++t) {
        clean[t] = 3.0 * std::sin(2.0 * M_PI * static_cast<double>(t) / 40.0);
        g.years.push_back(1800 + static_cast<int>(t));
        g.rates.push_back(clean[t] + noise[t]);
    }
    const auto s = wavelet_smooth(g, 3);
    EXPECT_LE(rms(s.rates, clean), 0.6 * rms(g.rates, clean));
    EXPECT_LE(stats::variance(s.rates), stats::variance(g.rates));
    EXPECT_NEAR(stats::mean(s.rates), stats::mean(g.rates), 1e-6);
    const auto twice = wavelet_smooth(s, 3);
    EXPECT_LT(rms(twice.rates, s.rates), 0.05 * std::sqrt(std::inner_product(s.rates.begin(), s.rates.end(), s.rates.begin(), 0.0) / n));
}

TEST(WaveletSmooth, VarianceNeverGrows) {
    for (int seed = 0; seed < 20; ++seed) {
        Rng rng(derive_seed(54, static_cast<std::uint64_t>(seed)));
        GrowthSeries g;
        const auto x = gaussian(150, rng);
        for (std::size_t t = 0; t < x.size(); ++t) {
            g.years.push_back(static_cast<int>(t));
            g.rates.push_back(x[t] * (1.0 + static_cast<double>(t % 7)));
        }
        for (auto mode : {ThresholdMode::soft, ThresholdMode::hard}) {
            const auto s = wavelet_smooth(g, 3, mode);
            EXPECT_LE(stats::variance(s.rates), stats::variance(g.rates) * (1 + 1e-12));
            EXPECT_NEAR(stats::mean(s.rates), stats::mean(g.rates), 1e-6);
        }
    }
}

TEST(WaveletSmooth, TooShort) {
    GrowthSeries g{{1, 2, 3, 4, 5, 6, 7}, {1, 2, 3, 4, 5, 6, 7}};
    EXPECT_THROW(wavelet_smooth(g, 3), InsufficientData);
    EXPECT_NO_THROW(wavelet_smooth(g, 2));
}

TEST(GrowthCsv, RoundTripFormat) {
    std::istringstream in("year,rate\n1801,-1.25\n1803,2.5\n");
    const auto g = parse_growth_csv(in);
    ASSERT_EQ(g.size(), 2u);
    EXPECT_DOUBLE_EQ(g.rates[0], -1.25);
    std::istringstream bad("1801,1\n1801,2\n");
    EXPECT_THROW(parse_growth_csv(bad), ParseError);
}
