#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "clf/error.hpp"
#include "clf/stationary.hpp"
#include "clf/stats.hpp"
#include "oracles.hpp"

using namespace clf;

namespace {

DensityGrid on_grid(const GridSpec& spec, double (*f)(double, double), double scale) {
    return DensityGrid::from_function(spec, [&](double x) { return f(x, scale); }).normalized();
}

}  // namespace

TEST(Predictions, TailExponentAndVariance) {
    EXPECT_DOUBLE_EQ(predicted_tail_exponent(4, 1.5), 3.5);
    EXPECT_DOUBLE_EQ(predicted_tail_exponent(2, 2), 2.0);
    EXPECT_NEAR(predicted_tail_exponent(2.2, 1.5), 1.7, 1e-15);
    EXPECT_TRUE(variance_is_finite(4, 1));
    EXPECT_FALSE(variance_is_finite(2.2, 1.5));
    EXPECT_FALSE(variance_is_finite(3, 1));
}

TEST(CharacteristicWidth, DimensionalBalance) {
    EXPECT_NEAR(characteristic_width({2.0, 4.0, 0.0}, {1.5, 2.0}), std::pow(std::pow(2.0, 1.5) / 2.0, 1.0 / 3.5), 1e-12);
    const auto g = default_stationary_grid({1.0, 2.0, 3.0}, {2.0, 1.0});
    EXPECT_EQ(g.n_points, 4096u);
    EXPECT_DOUBLE_EQ(g.center(), 3.0);
    EXPECT_DOUBLE_EQ(g.x_max - 3.0, 30.0);
}

TEST(Ffp, GaussianOrnsteinUhlenbeck) {
    // Linear force, mu = 2: stationary variance D^2/alpha under exp(-(D|k|)^2) noise.
    const Potential p(1.0, 2.0, 0.0);
    const StableParams noise(2.0, 1.0);
    const GridSpec grid{-12.0, 12.0, 2401};
    const auto sol = solve_stationary_ffp(p, noise, grid);
    const auto ref = on_grid(grid, oracle::normal_pdf, 1.0);
    EXPECT_LT(l1_distance(sol, ref), 1e-3);
}

TEST(Ffp, LinearForceCauchy) {
    // Stationary characteristic function exp(-(D|k|)^mu / (alpha mu)) = exp(-|k|) for mu = 1.
    const Potential p(1.0, 2.0, 0.0);
    const StableParams noise(1.0, 1.0);
    const GridSpec grid{-30.0, 30.0, 3001};
    const auto sol = solve_stationary_ffp(p, noise, grid);
    // Compare conditional on the grid window.
    const auto ref = on_grid(grid, oracle::cauchy_pdf, 1.0);
    EXPECT_LT(l1_distance(sol, ref), 1e-3);
}

TEST(Ffp, LinearForceStableScale) {
    // Same relation at mu = 1.5: a stable law of scale D (alpha mu)^(-1/mu).
    const Potential p(1.0, 2.0, 0.0);
    const StableParams noise(1.5, 1.0);
    const GridSpec grid{-30.0, 30.0, 3001};
    const auto sol = solve_stationary_ffp(p, noise, grid);
    const StableParams law(1.5, std::pow(1.5, -1.0 / 1.5));
    const auto dense = pdf_grid(law, default_pdf_grid(law));
    const auto ref = DensityGrid::from_function(grid, [&](double x) { return dense.value_at(x); }).normalized();
    EXPECT_LT(l1_distance(sol, ref), 1e-3);
}

TEST(Ffp, SteepWellIsBimodalAndSymmetric) {
    const Potential p(1.0, 4.0, 0.5);
    const StableParams noise(1.0, 1.0);
    const auto grid = default_stationary_grid(p, noise);
    const auto sol = solve_stationary_ffp(p, noise, grid);
    const auto modes = find_modes(sol);
    ASSERT_EQ(modes.count(), 2u);
    EXPECT_TRUE(modes.is_bimodal);
    EXPECT_NEAR(modes.locations[0] - 0.5, -(modes.locations[1] - 0.5), 2 * grid.spacing());
    EXPECT_NEAR(modes.densities[0], modes.densities[1], 1e-6);
    const auto& v = sol.values();
    double asym = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) asym = std::max(asym, std::abs(v[i] - v[v.size() - 1 - i]));
    EXPECT_LT(asym, 1e-6);
}

TEST(Ffp, SteepWellGaussianNoiseIsUnimodal) {
    const Potential p(1.0, 4.0, 0.0);
    const StableParams noise(2.0, 1.0);
    const auto sol = solve_stationary_ffp(p, noise, default_stationary_grid(p, noise));
    EXPECT_EQ(find_modes(sol).count(), 1u);
}

TEST(Ffp, TailSlopeMatchesPrediction) {
    // Slope over the outer decade of the output grid. The survival function comes from the padded
    // domain so that mass beyond the output grid is not truncated away.
    for (const auto [beta, mu] : {std::pair{4.0, 1.5}, {3.0, 1.0}, {2.5, 1.5}}) {
        const Potential p(1.0, beta, 0.0);
        const StableParams noise(mu, 1.0);
        const auto grid = default_stationary_grid(p, noise);
        const auto sol = solve_stationary_ffp_detailed(p, noise, grid);
        const double outer = grid.x_max - p.r0();
        const double slope = ccdf_loglog_slope(sol.domain, p.r0(), outer / 10.0, outer);
        const double nu = predicted_tail_exponent(beta, mu);
        EXPECT_NEAR(slope, -nu, 0.1 * nu) << "beta=" << beta << " mu=" << mu;
    }
}

TEST(Ffp, RejectsBadGrids) {
    const Potential p(1.0, 2.0, 0.0);
    const StableParams noise(1.5, 1.0);
    EXPECT_THROW(solve_stationary_ffp(p, noise, GridSpec{-5.0, 6.0, 401}), InvalidArgument);
    EXPECT_THROW(solve_stationary_ffp(p, noise, GridSpec{-2.0, 2.0, 401}), GridTooNarrow);
    EXPECT_THROW(solve_stationary_ffp(p, noise, GridSpec{-30.0, 30.0, 21}), GridTooNarrow);
    FfpOptions few;
    few.max_steps = 3;
    EXPECT_THROW(solve_stationary_ffp(p, noise, GridSpec{-30.0, 30.0, 1201}, few), NonConvergence);
}

TEST(Kde, SingleKernel) {
    const GridSpec grid{-8.0, 8.0, 1601};
    const std::vector<double> one{0.0};
    const auto d = kde(one, 1.0, grid);
    for (double x : {0.0, 1.0, 2.5}) EXPECT_NEAR(d.value_at(x), oracle::normal_pdf(x, 1.0), 1e-6);
}

TEST(Kde, UnitMassAndErrors) {
    const GridSpec grid{-3.0, 3.0, 301};
    const std::vector<double> x{-1.0, 0.2, 2.9, 5.0};
    const auto d = kde(x, 0.4, grid);
    EXPECT_GE(d.mass(), 0.99);
    EXPECT_LE(d.mass(), 1.001);
    EXPECT_THROW(kde(std::vector<double>{}, 1.0, grid), InsufficientData);
    EXPECT_THROW(kde(x, 0.0, grid), InvalidArgument);
}

TEST(Kde, LargeGaussianSample) {
    Rng rng(21);
    std::vector<double> x(1000000);
    for (std::size_t i = 0; i + 1 < x.size(); i += 2) {
        // Box-Muller
        const double r = std::sqrt(-2.0 * std::log(uniform_open(rng)));
        const double t = 2.0 * M_PI * uniform_open(rng);
        x[i] = r * std::cos(t);
        x[i + 1] = r * std::sin(t);
    }
    const GridSpec grid{-6.0, 6.0, 1201};
    const auto d = kde(x, silverman_bandwidth(x), grid);
    EXPECT_LT(l1_distance(d, on_grid(grid, oracle::normal_pdf, 1.0)), 0.01);
}

TEST(Kde, BinnedPathMatchesDirect) {
    Rng rng(22);
    std::vector<double> x(30000);
    for (auto& v : x) v = 4.0 * uniform_open(rng) - 2.0;
    const GridSpec small{-3.0, 3.0, 601};
    const GridSpec large{-3.0, 3.0, 1001};
    // 30000 x 601 stays direct; 30000 x 1001 > 2e7 switches to binning.
    const auto a = kde(x, 0.2, small);
    const auto b = kde(x, 0.2, large);
    for (double t : {-1.5, 0.0, 0.7, 2.2}) EXPECT_NEAR(a.value_at(t), b.value_at(t), 1e-3);
}

TEST(Silverman, PluginValueAndEquivariance) {
    Rng rng(23);
    std::vector<double> x(100000);
    for (std::size_t i = 0; i + 1 < x.size(); i += 2) {
        const double r = std::sqrt(-2.0 * std::log(uniform_open(rng)));
        const double t = 2.0 * M_PI * uniform_open(rng);
        x[i] = r * std::cos(t);
        x[i + 1] = r * std::sin(t);
    }
    EXPECT_NEAR(silverman_bandwidth(x), 0.09, 0.09 * 0.05);
    std::vector<double> y = x;
    for (auto& v : y) v *= 3.5;
    EXPECT_NEAR(silverman_bandwidth(y), 3.5 * silverman_bandwidth(x), 1e-12);
    EXPECT_THROW(silverman_bandwidth(std::vector<double>{1.0}), InsufficientData);
    EXPECT_THROW(silverman_bandwidth(std::vector<double>{2.0, 2.0, 2.0}), DegenerateSample);
}

TEST(Modes, GaussianHasOneModeAtZero) {
    const GridSpec grid{-5.0, 5.0, 1000};
    const auto d = on_grid(grid, oracle::normal_pdf, 1.0);
    const auto m = find_modes(d);
    ASSERT_EQ(m.count(), 1u);
    EXPECT_NEAR(m.locations[0], 0.0, grid.spacing());
    EXPECT_FALSE(m.is_bimodal);
}

TEST(Modes, ProminenceThreshold) {
    const GridSpec grid{-6.0, 6.0, 1201};
    auto mixture = [](double depth) {
        return [depth](double x) {
            return oracle::normal_pdf(x - 1.5, 1.0) + oracle::normal_pdf(x + 1.5, 1.0) + depth * oracle::normal_pdf(x, 0.2);
        };
    };
    const auto two = DensityGrid::from_function(grid, mixture(0.0));
    const auto m = find_modes(two);
    ASSERT_EQ(m.count(), 2u);
    EXPECT_LT(m.locations[0], m.locations[1]);
    // Tiny ripple on a flat top is not a mode at the default threshold.
    const auto ripple = DensityGrid::from_function(grid, [](double x) {
        return oracle::normal_pdf(x, 2.0) * (1.0 + 0.001 * std::cos(20.0 * x));
    });
    EXPECT_EQ(find_modes(ripple).count(), 1u);
}
