#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "clf/dynamics.hpp"
#include "clf/error.hpp"
#include "clf/stationary.hpp"
#include "clf/stats.hpp"

using namespace clf;

namespace {

// Reference solution of dr/dt = force(r) by adaptive Runge-Kutta.
double integrate_ode(const Potential& p, double r, double t) {
    using namespace boost::numeric::odeint;
    std::vector<double> state{r};
    auto rhs = [&](const std::vector<double>& s, std::vector<double>& ds, double) { ds[0] = force(p, s[0]); };
    integrate_adaptive(make_controlled<runge_kutta_dopri5<std::vector<double>>>(1e-12, 1e-12), rhs, state, 0.0, t,
                       1e-4);
    return state[0];
}

}  // namespace

TEST(Potential, Values) {
    EXPECT_DOUBLE_EQ(potential_value({2, 2, 0}, 3), 9.0);
    EXPECT_DOUBLE_EQ(potential_value({4, 4, 1}, 2), 1.0);
    EXPECT_DOUBLE_EQ(potential_value({1.3, 2.7, 0.4}, 0.4), 0.0);
    EXPECT_THROW(Potential(0.0, 2.0, 0.0), InvalidArgument);
    EXPECT_THROW(Potential(1.0, -1.0, 0.0), InvalidArgument);
}

TEST(Force, ValuesAndCusp) {
    EXPECT_DOUBLE_EQ(force({1, 2, 0}, 1), -1.0);
    EXPECT_DOUBLE_EQ(force({2, 4, 0}, -1), 2.0);
    EXPECT_DOUBLE_EQ(force({1, 0.5, 0.3}, 0.3), 0.0);
    EXPECT_DOUBLE_EQ(force({1, 3, 0.3}, 0.3), 0.0);
}

TEST(Force, IsMinusPotentialDerivative) {
    const Potential p(0.7, 2.6, 1.1);
    for (double r : {-2.0, 0.5, 1.5, 4.0}) {
        const double h = 1e-6;
        EXPECT_NEAR(force(p, r), -(potential_value(p, r + h) - potential_value(p, r - h)) / (2 * h), 1e-6);
    }
}

TEST(DriftFlow, ClosedForms) {
    EXPECT_NEAR(drift_flow({1, 2, 0}, 1, 1), std::exp(-1.0), 1e-15);
    EXPECT_NEAR(drift_flow({1, 4, 0}, 1, 1.5), 0.5, 1e-15);
    EXPECT_DOUBLE_EQ(drift_flow({1, 3, 2}, 2, 5), 2.0);
}

TEST(DriftFlow, MatchesNumericalOde) {
    for (double beta : {0.8, 1.5, 2.0, 2.2, 3.0, 4.0}) {
        const Potential p(0.9, beta, 0.5);
        for (double r : {-1.5, 0.7, 2.5}) {
            for (double t : {0.05, 0.3}) {
                // Below beta = 2 the flow hits r0 in finite time, where the ODE is stiff; stay clear of it.
                const double y = std::abs(r - p.r0());
                if (beta < 2 && t > 0.8 * std::pow(y, 2 - beta) / (p.alpha() * (2 - beta))) continue;
                const double ref = integrate_ode(p, r, t);
                EXPECT_NEAR(drift_flow(p, r, t), ref, 1e-8) << "beta=" << beta << " r=" << r << " t=" << t;
            }
        }
    }
}

TEST(DriftFlow, FiniteExtinctionBelowBetaTwo) {
    // beta = 1: |y| decreases linearly at rate alpha, reaching r0 at t = |y|/alpha.
    EXPECT_DOUBLE_EQ(drift_flow({2, 1, 0}, 1, 0.6), 0.0);
    EXPECT_NEAR(drift_flow({2, 1, 0}, 1, 0.25), 0.5, 1e-12);
}

TEST(DriftFlow, NeverOvershootsAndMovesTowardR0) {
    Rng rng(3);
    for (int i = 0; i < 20000; ++i) {
        const double alpha = std::exp(6 * uniform_open(rng) - 3);
        const double beta = 0.2 + 5 * uniform_open(rng);
        const double r0 = 4 * uniform_open(rng) - 2;
        const double r = r0 + std::ldexp(uniform_open(rng) - 0.5, static_cast<int>(20 * uniform_open(rng)) - 8);
        const double t = std::exp(8 * uniform_open(rng) - 6);
        const double out = drift_flow({alpha, beta, r0}, r, t);
        ASSERT_TRUE(std::isfinite(out));
        ASSERT_GE((out - r0) * (r - r0), 0.0);
        ASSERT_LE(std::abs(out - r0), std::abs(r - r0));
    }
}

TEST(DriftFlow, BackwardInvertsForward) {
    const Potential p(1.2, 3.0, 0.2);
    for (double r : {-3.0, -0.1, 0.9, 6.0}) EXPECT_NEAR(drift_flow_backward(p, drift_flow(p, r, 0.1), 0.1), r, 1e-9);
    // Beyond the reach of the flow from infinity there is no preimage.
    EXPECT_EQ(drift_flow_backward(p, 100.0, 1.0), INFINITY);
    EXPECT_EQ(drift_flow_backward(p, -100.0, 1.0), -INFINITY);
}

TEST(Step, DeterministicLimit) {
    Rng rng(4);
    const Potential p(1, 4, 0);
    EXPECT_NEAR(step(p, {1.5, 1e-300}, 1.0, 0.1, rng), drift_flow(p, 1.0, 0.1), 1e-12);
}

TEST(Step, GaussianIncrementVariance) {
    Rng rng(5);
    const Potential p(1, 2, 0);
    const double dt = 0.04, D = 1.3;
    std::vector<double> x(1000000);
    for (auto& v : x) v = step(p, {2.0, D}, 0.0, dt, rng);
    EXPECT_NEAR(stats::mean(x), 0.0, 0.002);
    EXPECT_NEAR(stats::variance(x) / (2 * D * D * dt), 1.0, 0.01);
}

TEST(Step, CauchyIncrementsWithoutDrift) {
    Rng rng(6);
    const Potential p(1e-12, 2, 0);
    std::vector<double> x(1000000);
    for (auto& v : x) v = step(p, {1.0, 1.0}, 0.0, 1.0, rng);
    EXPECT_NEAR(stats::quantile(x, 0.25), -1.0, 0.01);
    EXPECT_NEAR(stats::quantile(x, 0.75), 1.0, 0.01);
    EXPECT_NEAR(stats::quantile(x, 0.9), std::tan(0.4 * M_PI), 0.03);
}

TEST(SimConfig, Validation) {
    SimConfig cfg;
    cfg.n_steps = 100;
    cfg.burn_in = 100;
    EXPECT_THROW(cfg.validate(), InvalidArgument);
    Rng rng(1);
    EXPECT_THROW(simulate({1, 2, 0}, {2, 1}, cfg, rng), InvalidArgument);
    cfg.burn_in = 10;
    cfg.thin = 0;
    EXPECT_THROW(cfg.validate(), InvalidArgument);
    const auto d = SimConfig::with_default_burn_in(0.01, 1000);
    EXPECT_EQ(d.burn_in, 100u);
}

TEST(Simulate, LengthAndTimes) {
    SimConfig cfg{0.01, 1000, 100, 7, 0.0};
    Rng rng(2);
    const auto tr = simulate({1, 2, 0}, {1.5, 1}, cfg, rng);
    ASSERT_EQ(tr.rates.size(), (1000u - 100u) / 7u);
    ASSERT_EQ(tr.times.size(), tr.rates.size());
    for (std::size_t i = 1; i < tr.times.size(); ++i) EXPECT_NEAR(tr.times[i] - tr.times[i - 1], 0.07, 1e-12);
}

TEST(Simulate, OrnsteinUhlenbeckStationaryStd) {
    // Linear force with Gaussian noise of variance 2 D^2 dt per step: stationary variance D^2/alpha.
    const double alpha = 1.0, D = 1.0;
    SimConfig cfg = SimConfig::with_default_burn_in(0.01, 10000000);
    Rng rng(7);
    const auto tr = simulate({alpha, 2, 0}, {2.0, D}, cfg, rng);
    EXPECT_NEAR(stats::std_dev(tr.rates) / (D / std::sqrt(alpha)), 1.0, 0.02);
}

TEST(Simulate, MirrorSymmetry) {
    const Potential p(1.0, 3.0, 0.0);
    const StableParams noise(1.3, 0.8);
    SimConfig cfg{0.01, 5000, 500, 1, 0.7};
    Rng a(9), b(9);
    const auto up = simulate_with(p, noise, cfg, [&] { return sample_standard(1.3, a); });
    cfg.r_init = -0.7;
    const auto down = simulate_with(p, noise, cfg, [&] { return -sample_standard(1.3, b); });
    ASSERT_EQ(up.rates.size(), down.rates.size());
    for (std::size_t i = 0; i < up.rates.size(); ++i) ASSERT_EQ(up.rates[i], -down.rates[i]);
}

TEST(Simulate, BimodalStationaryKde) {
    // True dip is about 6% of the peak height; KDE smoothing removes part of it.
    SimConfig cfg = SimConfig::with_default_burn_in(0.01, 10000000, 10);
    Rng rng(10);
    const auto tr = simulate({1, 4, 0}, {1.5, 1}, cfg, rng);
    const GridSpec grid{-5, 5, 1001};
    const auto density = kde(tr.rates, silverman_bandwidth(tr.rates), grid);
    EXPECT_EQ(find_modes(density, 0.02).count(), 2u);
}

TEST(Simulate, StationaryHalvesAgree) {
    SimConfig cfg = SimConfig::with_default_burn_in(0.01, 2222223, 2);
    Rng rng(11);
    const auto tr = simulate({1, 3, 0}, {1.5, 1}, cfg, rng);
    ASSERT_GE(tr.rates.size(), 1000000u);
    const std::size_t half = tr.rates.size() / 2;
    const std::vector<double> a(tr.rates.begin(), tr.rates.begin() + static_cast<std::ptrdiff_t>(half));
    const std::vector<double> b(tr.rates.begin() + static_cast<std::ptrdiff_t>(half), tr.rates.end());
    const GridSpec grid{-6, 6, 1201};
    const double bw = silverman_bandwidth(tr.rates);
    EXPECT_LT(l1_distance(kde(a, bw, grid), kde(b, bw, grid)), 0.02);
}
